//! Built-in input files.
//!
//! Every file shipped with the library is registered here under its file
//! stem and parsed on demand through [`crate::parse::load_fixture`].  The
//! two Bockstein ladders are also assembled here, because their opening
//! pages take their differential from the stated degree-one Steenrod
//! operation rather than from `differential` lines of their own.

use crate::parse::{load_fixture, AlgebraFile, FixtureFile, RingFile};
use crate::spectra::{BssSchedule, BssStage, DerivationSpec};

/// A named input file compiled into the library.
#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    /// Registry key: the stem of the file name.
    pub name: &'static str,
    /// Complete file text.
    pub text: &'static str,
}

macro_rules! fixture {
    ($stem:literal) => {
        Fixture {
            name: $stem,
            text: include_str!(concat!("../fixtures/", $stem, ".alg")),
        }
    };
}

/// Every input file shipped with the library.
pub const ALL: &[Fixture] = &[
    fixture!("loops-bg2q"),
    fixture!("loops-bsolq"),
    fixture!("loops-g2"),
    fixture!("loops-di4"),
    fixture!("loops-su3"),
    fixture!("su3-homology"),
    fixture!("g2-homology"),
    fixture!("di4-homology"),
    fixture!("bsu3-cohomology"),
    fixture!("bg2-cohomology"),
    fixture!("bdi4-cohomology"),
    fixture!("bg2q-cohomology"),
    fixture!("bsolq-cohomology"),
    fixture!("serre-input"),
    fixture!("bss-g2-page2"),
    fixture!("bss-g2-page3"),
    fixture!("bss-sol-page2"),
    fixture!("bss-sol-page3"),
    fixture!("bss-sol-page4"),
    fixture!("loops-bg2q-corrupt-comm"),
    fixture!("loops-bg2q-corrupt-coproduct"),
    fixture!("loops-bg2q-corrupt-steenrod"),
];

/// Looks a built-in file up by its registry key.
pub fn find(name: &str) -> Option<&'static Fixture> {
    ALL.iter().find(|f| f.name == name)
}

/// Parses a built-in file.  Panics on an unregistered name or a parse
/// failure: the registry is a compile-time constant and every entry is
/// covered by tests, so either miss is a programming error.
pub fn load(name: &str) -> FixtureFile {
    let fixture = find(name).unwrap_or_else(|| panic!("no built-in file named `{name}`"));
    load_fixture(fixture.text)
        .unwrap_or_else(|e| panic!("built-in file `{name}` does not parse: {e}"))
}

/// Parses a built-in presented-algebra file.
pub fn algebra(name: &str) -> AlgebraFile {
    match load(name) {
        FixtureFile::Algebra(a) => a,
        FixtureFile::Ring(_) => panic!("built-in file `{name}` is a ring, not an algebra"),
    }
}

/// Parses a built-in quotient-ring file.
pub fn ring(name: &str) -> RingFile {
    match load(name) {
        FixtureFile::Ring(r) => r,
        FixtureFile::Algebra(_) => panic!("built-in file `{name}` is an algebra, not a ring"),
    }
}

fn ladder(name: &str, opening: &str, pages: &[&str]) -> BssSchedule {
    let first = algebra(opening);
    let diff = DerivationSpec::from_sq1(&first.presentation, &first.steenrod);
    let mut stages = vec![BssStage::new(opening, first.presentation, diff)];
    for page in pages {
        let file = algebra(page);
        let diff = file
            .differential
            .unwrap_or_else(|| panic!("ladder page `{page}` carries no differential"));
        stages.push(BssStage::new(page, file.presentation, diff));
    }
    BssSchedule {
        name: name.to_string(),
        stages,
    }
}

/// The Bockstein ladder for the loop space of BG_2(q): the opening page is
/// `loops-bg2q` with the degree-one Steenrod operation as differential,
/// followed by the two shipped pages.
pub fn bss_g2_schedule() -> BssSchedule {
    ladder("loops-bg2q-bockstein", "loops-bg2q", &["bss-g2-page2", "bss-g2-page3"])
}

/// The Bockstein ladder for the loop space of BSol(q): the opening page is
/// `loops-bsolq` with the degree-one Steenrod operation as differential,
/// followed by the three shipped pages.
pub fn bss_sol_schedule() -> BssSchedule {
    ladder(
        "loops-bsolq-bockstein",
        "loops-bsolq",
        &["bss-sol-page2", "bss-sol-page3", "bss-sol-page4"],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{primitives_in_degree, CoalgebraData};
    use crate::parse::{product_dims, serialize_fixture, Expectation};

    #[test]
    fn registry_keys_are_unique_and_match_header_names() {
        for (i, f) in ALL.iter().enumerate() {
            assert!(
                ALL[..i].iter().all(|g| g.name != f.name),
                "duplicate registry key `{}`",
                f.name
            );
            let parsed = load(f.name);
            assert_eq!(
                parsed.name(),
                f.name.replace('-', "_"),
                "header name of `{}` disagrees with its registry key",
                f.name
            );
        }
    }

    #[test]
    fn every_file_survives_a_round_trip() {
        for f in ALL {
            let parsed = load(f.name);
            let emitted = serialize_fixture(&parsed);
            let reparsed = load_fixture(&emitted)
                .unwrap_or_else(|e| panic!("serialized `{}` does not parse: {e}", f.name));
            assert_eq!(reparsed, parsed, "round trip changed `{}`", f.name);
        }
    }

    #[test]
    fn every_declared_product_matches_the_basis_count() {
        let cap = 16;
        let mut checked = 0;
        for f in ALL {
            let FixtureFile::Algebra(a) = load(f.name) else {
                continue;
            };
            if let Some(Expectation::Product(factors)) = &a.expect {
                assert_eq!(
                    product_dims(factors, cap),
                    a.presentation.poincare(cap),
                    "declared decomposition of `{}` disagrees with its basis",
                    f.name
                );
                checked += 1;
            }
        }
        assert!(checked >= 12, "expected most algebra files to declare a product");
    }

    #[test]
    fn ladders_assemble_with_sq1_opening_pages() {
        let g2 = bss_g2_schedule();
        assert_eq!(g2.stages.len(), 3);
        let pres = &g2.stages[0].pres;
        let z6 = pres.generator_element("x5").unwrap();
        let g = pres.generators().iter().position(|g| g.name == "z6").unwrap();
        assert_eq!(g2.stages[0].diff.of_generator(g), &z6);

        let sol = bss_sol_schedule();
        assert_eq!(sol.stages.len(), 4);
        let pres = &sol.stages[0].pres;
        let y13 = pres.generator_element("y13").unwrap();
        let g = pres.generators().iter().position(|g| g.name == "y14").unwrap();
        assert_eq!(sol.stages[0].diff.of_generator(g), &y13);
    }

    /// Independent cross-check: the cobar homology of an exterior coalgebra
    /// on degrees 3 and 5 is polynomial on degrees 2 and 4.
    #[test]
    fn loop_homology_of_the_rank_two_exterior_coalgebra_is_polynomial() {
        let su3 = algebra("su3-homology");
        let coalg = CoalgebraData::from_presented(&su3.presentation, &su3.coproduct, 14).unwrap();
        let cotor = crate::cobar::cotor(&coalg, 12).unwrap();
        let loops = algebra("loops-su3");
        assert_eq!(cotor, loops.presentation.poincare(12));
    }

    /// The degree-26 part of the DI(4) loop-space fixture is spanned by
    /// e26 and a6*b10^2, but only e26 is primitive.
    #[test]
    fn degree_26_of_the_di4_loop_fixture_has_a_unique_primitive() {
        let file = algebra("loops-di4");
        assert_eq!(file.presentation.poincare(26).get(26), 2);
        let prims = primitives_in_degree(&file.presentation, &file.coproduct, 26);
        assert_eq!(prims.len(), 1);
        assert_eq!(file.presentation.format_element(&prims[0]), "e26");
    }
}
