//! The grid of products `S_i S_j` attached to the filtration of a space at
//! a place.
//!
//! Indices are 1-based in the report: `dims[i-1][j-i]` is `dim S_i S_j`
//! for `i ≤ j`. The horizontal edge `S_iS_j → S_iS_{j+1}` has weight
//! `horizontal[i-1][j-i]`; the vertical edge `S_iS_j → S_{i+1}S_j`
//! (defined for `i < j`) has weight `vertical[i-1][j-i-1]`.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::linalg::{Echelon, Row};
use crate::error::{Error, Result};
use crate::function_field::{Divisor, Numer, Place};

use super::{Layout, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Horizontal,
    Vertical,
}

/// An edge of weight at least 2, from `S_iS_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeavyEdge {
    pub kind: EdgeKind,
    pub i: usize,
    pub j: usize,
    pub weight: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeReport {
    pub place: String,
    pub n: usize,
    /// `v_P` of the filtered basis of the normalized space.
    pub valuations: Vec<i64>,
    pub dims: Vec<Vec<usize>>,
    pub horizontal: Vec<Vec<usize>>,
    pub vertical: Vec<Vec<usize>>,
    pub gamma: i64,
    pub p_index: Option<usize>,
    pub heavy_edges: Vec<HeavyEdge>,
    /// Squares where both edges into `S_{i+1}S_{j+1}` have weight 1.
    pub codim1_squares: usize,
    /// Whether `S_iS_{j+1} = S_{i+1}S_j` on every such square.
    pub codim1_holds: bool,
    /// `D_{S_{j+1}} - D_{S_j}` is constant for `j ≥ 2`, `j ≠ j₀`. Only
    /// evaluated when the P-index exists and every `D_{S_j}` is supported on
    /// places of degree at most 2.
    pub divisor_steps_hold: Option<bool>,
}

impl LatticeReport {
    pub fn dim(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.dims[i - 1][j - i]
    }

    /// Every edge weight is at least 1 and every monotone path from
    /// `S_1^2` to `S_n^2` has total weight `dim S^2 - 1`.
    pub fn weights_consistent(&self) -> bool {
        let n = self.n;
        for i in 1..=n {
            for j in i..n {
                let w = self.horizontal[i - 1][j - i];
                if w == 0 || self.dim(i, j) + w != self.dim(i, j + 1) {
                    return false;
                }
            }
            for j in i + 1..=n {
                let w = self.vertical[i - 1][j - i - 1];
                if w == 0 || self.dim(i, j) + w != self.dim(i + 1, j) {
                    return false;
                }
            }
        }
        // Two extreme paths: along row 1 then up column n, and the staircase.
        let top: usize = (1..n).map(|j| self.horizontal[0][j - 1]).sum::<usize>()
            + (1..n)
                .map(|i| self.vertical[i - 1][n - i - 1])
                .sum::<usize>();
        let stair: usize = (1..n)
            .map(|i| self.horizontal[i - 1][0] + self.vertical[i - 1][0])
            .sum();
        let total = self.dim(n, n) - 1;
        top == total && stair == total
    }
}

struct Products {
    layout: Layout,
    rows: Vec<Vec<Row>>,
}

impl Products {
    fn new(s: &Subspace, es: &[Numer]) -> Self {
        let d = s.curve.d();
        let n = es.len();
        let prods: Vec<Vec<Numer>> = (0..n)
            .map(|a| (0..n).map(|b| es[a].mul(&es[b], d)).collect())
            .collect();
        let layout = Layout::for_numers(&s.curve, prods.iter().flatten());
        let rows = prods
            .iter()
            .map(|r| r.iter().map(|p| layout.row(p)).collect())
            .collect();
        Products { layout, rows }
    }

    /// Echelon form of `S_iS_j` (1-based).
    fn space(&self, i: usize, j: usize) -> Echelon {
        let mut e = Echelon::new(self.layout.len());
        for a in 0..i {
            for b in 0..j {
                e.insert(self.rows[a][b].clone());
            }
        }
        e
    }

    fn row_dims(&self, i: usize, n: usize) -> Vec<usize> {
        let mut e = Echelon::new(self.layout.len());
        for a in 0..i {
            for b in a..i {
                e.insert(self.rows[a][b].clone());
            }
        }
        let mut out = vec![e.rank()];
        for j in i..n {
            for a in 0..i {
                e.insert(self.rows[a][j].clone());
            }
            out.push(e.rank());
        }
        out
    }
}

/// Builds the lattice of `e_1^{-1} S` at the degree-1 place `p`.
pub fn lattice(s: &Subspace, p: &Place) -> Result<LatticeReport> {
    let (s, _) = s.normalize_at(p)?;
    let fb = s.filtered_basis(p)?;
    let n = s.dim();
    let prods = Products::new(&s, fb.numers());

    let dims: Vec<Vec<usize>> = (1..=n)
        .into_par_iter()
        .map(|i| prods.row_dims(i, n))
        .collect();
    let dim = |i: usize, j: usize| {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        dims[i - 1][j - i]
    };
    let horizontal: Vec<Vec<usize>> = (1..=n)
        .map(|i| (i..n).map(|j| dim(i, j + 1) - dim(i, j)).collect())
        .collect();
    let vertical: Vec<Vec<usize>> = (1..=n)
        .map(|i| (i + 1..=n).map(|j| dim(i + 1, j) - dim(i, j)).collect())
        .collect();

    let mut heavy_edges = Vec::new();
    for i in 1..=n {
        for j in i..n {
            let w = horizontal[i - 1][j - i];
            if w >= 2 {
                heavy_edges.push(HeavyEdge {
                    kind: EdgeKind::Horizontal,
                    i,
                    j,
                    weight: w,
                });
            }
        }
        for j in i + 1..=n {
            let w = vertical[i - 1][j - i - 1];
            if w >= 2 {
                heavy_edges.push(HeavyEdge {
                    kind: EdgeKind::Vertical,
                    i,
                    j,
                    weight: w,
                });
            }
        }
    }

    // Squares with target S_{i+1}S_{j+1}, i + 1 ≤ j, both incoming weights 1.
    let squares: Vec<(usize, usize)> = (1..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| {
            dim(i + 1, j + 1) == dim(i, j + 1) + 1 && dim(i + 1, j + 1) == dim(i + 1, j) + 1
        })
        .collect();
    let codim1_holds = squares.par_iter().all(|&(i, j)| {
        let mut e = prods.space(i, j + 1);
        let r = e.rank();
        for a in 0..=i {
            for b in 0..j {
                e.insert(prods.rows[a][b].clone());
            }
        }
        e.rank() == r
    });

    let gamma = dim(n, n) as i64 - 2 * n as i64 + 1;
    let p_index = if gamma == 1 {
        find_p_index(n, &horizontal, &vertical)
    } else {
        None
    };

    let divisor_steps_hold = match p_index {
        Some(j0) if n >= 3 => match divisor_steps(&s, &fb, n, j0) {
            Ok(b) => Some(b),
            Err(Error::UnsupportedPlace(_)) => None,
            Err(e) => return Err(e),
        },
        _ => None,
    };

    Ok(LatticeReport {
        place: p.id().to_string(),
        n,
        valuations: fb.valuations().to_vec(),
        dims,
        horizontal,
        vertical,
        gamma,
        p_index,
        heavy_edges,
        codim1_squares: squares.len(),
        codim1_holds,
        divisor_steps_hold,
    })
}

/// The column `j₀` of the weight-2 horizontal edges, provided the
/// structure expected for `γ = 1` is present.
fn find_p_index(n: usize, horizontal: &[Vec<usize>], vertical: &[Vec<usize>]) -> Option<usize> {
    if n < 3 {
        return None;
    }
    let verticals_light = (2..=n).all(|i| vertical[i - 1].iter().all(|&w| w == 1));
    if !verticals_light {
        return None;
    }
    let row2 = &horizontal[1];
    let heavy: Vec<usize> = (2..n).filter(|&j| row2[j - 2] == 2).collect();
    let [j0] = heavy[..] else {
        return None;
    };
    (2..=j0)
        .all(|i| horizontal[i - 1][j0 - i] == 2)
        .then_some(j0)
}

fn divisor_steps(s: &Subspace, fb: &super::FilteredBasis, n: usize, j0: usize) -> Result<bool> {
    let curve = s.curve();
    let ds: Vec<Divisor> = (2..=n)
        .map(|j| fb.prefix(curve, j)?.divisor())
        .collect::<Result<_>>()?;
    let d = |j: usize| &ds[j - 2];
    let step = d(3).sub(d(2));
    for j in 2..n {
        if j != j0 && d(j + 1).sub(d(j)) != step {
            return Ok(false);
        }
    }
    Ok(true)
}

impl LatticeReport {
    /// Fails with a theorem violation when a structural check did not hold.
    pub fn ensure_consistent(&self) -> Result<()> {
        if !self.weights_consistent() {
            return Err(Error::TheoremViolation(
                "lattice weights are inconsistent".into(),
            ));
        }
        if !self.codim1_holds {
            return Err(Error::TheoremViolation(
                "two codimension-1 edges into the same vertex start at different spaces".into(),
            ));
        }
        if self.gamma == 1 && self.n >= 4 {
            match self.p_index {
                None => {
                    return Err(Error::TheoremViolation(
                        "no P-index for a space with γ = 1".into(),
                    ))
                }
                Some(j0) if j0 != 2 && j0 != self.n - 1 => {
                    return Err(Error::TheoremViolation(format!(
                        "P-index {j0} is neither 2 nor n-1"
                    )))
                }
                _ => {}
            }
            if self.divisor_steps_hold == Some(false) {
                return Err(Error::TheoremViolation(
                    "divisor steps D_{S_j} are not constant".into(),
                ));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BaseField;
    use crate::function_field::Curve;

    fn report(curve: &str, gens: &[&str], place: &str) -> LatticeReport {
        let c = if curve == "rational" {
            Curve::rational(BaseField::Rational)
        } else {
            Curve::parse(curve, BaseField::Rational).unwrap()
        };
        let s = Subspace::parse(&c, gens).unwrap();
        let p = Place::from_id(&c, place).unwrap();
        lattice(&s, &p).unwrap()
    }

    #[test]
    fn geometric_progression_has_light_edges() {
        let r = report("rational", &["1", "x", "x^2", "x^3", "x^4"], "Pinf");
        assert_eq!(r.gamma, 0);
        assert!(r.heavy_edges.is_empty());
        assert_eq!(r.p_index, None);
        assert!(r.weights_consistent());
        assert!(r.codim1_holds);
        assert!(r.codim1_squares > 0);
    }

    #[test]
    fn p_index_two() {
        let r = report("rational", &["1", "x^2", "x^3", "x^4"], "Pinf");
        assert_eq!(r.gamma, 1);
        assert_eq!(r.p_index, Some(2));
        assert_eq!(r.dim(2, 3), 5);
        assert_eq!(r.divisor_steps_hold, Some(true));
        r.ensure_consistent().unwrap();
    }

    #[test]
    fn p_index_n_minus_one() {
        let r = report("rational", &["1", "x", "x^2", "x^4"], "Pinf");
        assert_eq!(r.p_index, Some(3));
        assert_eq!(r.dim(2, 3), 4);
        r.ensure_consistent().unwrap();
    }

    #[test]
    fn elliptic_riemann_roch_space() {
        let r = report("y^2 = x^3 - x", &["1", "x", "y", "x^2", "x*y"], "O");
        assert_eq!(r.gamma, 1);
        assert!(matches!(r.p_index, Some(2) | Some(4)));
        r.ensure_consistent().unwrap();
    }

    #[test]
    fn heavy_edges_listed_for_large_gamma() {
        let r = report("rational", &["1", "x^3", "x^7", "x^12"], "Pinf");
        assert!(r.gamma >= 2);
        assert_eq!(r.p_index, None);
        assert!(!r.heavy_edges.is_empty());
        assert!(r.weights_consistent());
    }
}
