//! Fixed curves for the pipeline benchmarks, one per branch of the
//! decision, built deterministically so runs are comparable.

use trigon_core::curve::{gen_method1, gen_nodal, gen_trigonal_projection, parse_curve_file};
use trigon_core::{PlaneCurve, ProjPoint};

/// A named benchmark input with the point used for the genus-3 pencil.
pub struct Fixture {
    pub name: &'static str,
    pub curve: PlaneCurve,
    pub point: Option<ProjPoint>,
}

fn from_text(text: &str) -> PlaneCurve {
    parse_curve_file(text).and_then(|f| f.validate()).expect("fixture curve is valid")
}

/// Klein quartic with a rational point: the genus-3 pencil.
pub fn klein() -> Fixture {
    Fixture {
        name: "klein g3",
        curve: from_text("f = x^3*y + y^3*z + z^3*x\n"),
        point: Some(ProjPoint::from_i64(0, 0, 1).expect("point")),
    }
}

/// Fermat quintic: the Veronese branch.
pub fn fermat_quintic() -> Fixture {
    Fixture { name: "fermat g6", curve: from_text("f = x^5 + y^5 + z^5\n"), point: None }
}

/// Projection from a point of multiplicity `d − 3`: the scroll branch.
pub fn projection(d: u32) -> Fixture {
    let name = match d {
        5 => "projection g5",
        6 => "projection g7",
        7 => "projection g9",
        _ => "projection",
    };
    Fixture { name, curve: gen_trigonal_projection(d, 3, 1).expect("projection curve"), point: None }
}

/// Two-node quintic: the P¹ × P¹ branch.
pub fn two_node_quintic() -> Fixture {
    Fixture { name: "two-node quintic g4", curve: gen_nodal(5, 2, 3, 1).expect("nodal curve"), point: None }
}

/// Five-nodal sextic: a curve cut out by quadrics.
pub fn nodal_sextic() -> Fixture {
    Fixture { name: "nodal sextic g5", curve: gen_nodal(6, 5, 3, 1).expect("nodal curve"), point: None }
}

/// Method-1 curve of genus 10.
pub fn method1_genus10() -> Fixture {
    Fixture { name: "method1 g10", curve: gen_method1(6, 3, 1).expect("method-1 curve"), point: None }
}

/// Every fixture that decides in well under a second.
pub fn quick() -> Vec<Fixture> {
    vec![klein(), fermat_quintic(), projection(5), two_node_quintic(), nodal_sextic()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_have_expected_genus() {
        let genera: Vec<usize> = quick().iter().map(|f| f.curve.genus()).collect();
        assert_eq!(genera, [3, 6, 5, 4, 5]);
    }
}
