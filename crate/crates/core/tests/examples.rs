//! The quick examples must keep compiling and running.

macro_rules! example {
    ($name:ident, $file:literal) => {
        mod $name {
            #![allow(dead_code)]
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));

            #[test]
            fn runs() {
                main().expect(concat!($file, " failed"));
            }
        }
    };
}

example!(lie_bch, "lie_bch.rs");
example!(nilmanifold_reduce, "nilmanifold_reduce.rs");
example!(multicorrelation, "multicorrelation.rs");
example!(joining_stabilizer, "joining_stabilizer.rs");
example!(cocycles, "cocycles.rs");
example!(orbit_csv, "orbit_csv.rs");
example!(harness_run, "harness_run.rs");
