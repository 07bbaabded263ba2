use vctest_core::domain::{FiniteDistribution, FiniteDomain, Labelling, Point};
use vctest_core::rational::{q, q_ratio};
use vctest_harness::instance::Instance;
use vctest_harness::specs::{parse_domain_spec, GeneratorSpec};
use vctest_core::domain::Seed;
use vctest_core::hardness::Side;

#[test]
fn text_round_trip_for_each_point_kind() {
    let domains = [
        FiniteDomain::new(vec![Point::Real(vec![q(1), q_ratio(1, 2)]), Point::Real(vec![q(-3), q(0)])]).unwrap(),
        FiniteDomain::line(2),
        parse_domain_spec("cube:n=3,size=2,seed=4").unwrap(),
        FiniteDomain::poset_elements(2),
        FiniteDomain::indices(2),
    ];
    for domain in domains {
        let inst = Instance::new(
            domain,
            FiniteDistribution::new(vec![q_ratio(1, 3), q_ratio(2, 3)]).unwrap(),
            Labelling::parse("10").unwrap(),
        )
        .unwrap();
        let text = inst.to_text();
        assert_eq!(Instance::parse(&text).unwrap(), inst, "{text}");
    }
}

#[test]
fn documented_example_parses() {
    let text = "# comment\ndomain real-space 2\ndistribution\n1,1/2 1/4\n3,0 3/4\nlabelling\n1\n0\n";
    let inst = Instance::parse(text).unwrap();
    assert_eq!(inst.domain.len(), 2);
    assert_eq!(inst.support(), vec![0, 1]);
}

#[test]
fn malformed_files_are_rejected() {
    for bad in [
        "",
        "domain real-space 2\nlabelling\n",
        "domain real-space 1\ndistribution\n1 1/2\nlabelling\n1\n",
        "domain real-space 1\ndistribution\n1 1\nlabelling\n2\n",
        "domain torus 1\ndistribution\n1 1\nlabelling\n1\n",
        "domain real-space 1\ndistribution\n1 1\n",
    ] {
        assert!(Instance::parse(bad).is_err(), "{bad:?}");
    }
}

#[test]
fn generated_instances_survive_the_file_format() {
    for spec in ["chain:n=20", "symmetric:n=25", "junta:n=4,k=2", "ssd:domain=line:12"] {
        let g = GeneratorSpec::parse(spec).unwrap();
        let class = match spec {
            "ssd:domain=line:12" => Some(vctest_core::classes::parse_class_spec("intervals:k=1").unwrap()),
            _ => g.generator.natural_class(),
        };
        for side in [Side::Yes, Side::No] {
            let prepared = g.generator.prepare(class.as_ref(), side).unwrap();
            let inst = g.generator.generate(&prepared, side, 0.2, Seed(9)).unwrap();
            assert_eq!(Instance::parse(&inst.to_text()).unwrap(), inst, "{spec}");
        }
    }
}
