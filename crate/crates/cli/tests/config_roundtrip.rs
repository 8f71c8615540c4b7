use polarcheck_cli::{Command, OutputFormat, RunConfig};
use polarcheck_core::ToleranceConfig;
use proptest::prelude::*;

fn command() -> impl Strategy<Value = Command> {
    let name = "[a-z][a-z0-9-]{0,10}";
    prop_oneof![
        (name, proptest::option::of("[a-z]+\\([a-z0-9=,]{0,12}\\)"))
            .prop_map(|(group, subgroup)| Command::Analyze { group, subgroup }),
        Just(Command::CatalogList),
        proptest::collection::vec(name, 0..3).prop_map(|ids| Command::CatalogRun { ids }),
        (name, proptest::option::of(0usize..20)).prop_map(|(row, param)| Command::VerifyTable1 { row, param }),
    ]
}

proptest! {
    #[test]
    fn parse_of_canonical_args_is_identity(
        command in command(),
        samples in 1usize..50,
        seed in any::<u64>(),
        rank_tol in 1e-15f64..1e-3,
        residual_tol in 1e-15f64..1e-3,
        json in any::<bool>(),
        out in proptest::option::of("[a-z]{1,8}\\.json"),
    ) {
        let config = RunConfig {
            command,
            tol: ToleranceConfig { rel_rank_tol: rank_tol, residual_tol, num_samples: samples, seed },
            format: if json { OutputFormat::Json } else { OutputFormat::Text },
            out: out.map(Into::into),
        };
        let once = RunConfig::parse_from(config.to_args()).unwrap();
        prop_assert_eq!(&once, &config);
        let twice = RunConfig::parse_from(once.to_args()).unwrap();
        prop_assert_eq!(twice, once);
    }
}
