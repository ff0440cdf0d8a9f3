use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{snf_poly, Lattice, Mat, PDivisor, VortexError};
use crate::algebra::{Poly, Rat, RatFunc};

/// A presented vortex pair: the matrix of `f` and the splitting type of `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeroMap {
    mat: Mat<RatFunc>,
    twist: Vec<i64>,
}

impl MeroMap {
    pub fn new(mat: Mat<RatFunc>, twist: Vec<i64>) -> Result<Self, VortexError> {
        if !mat.is_square() || twist.len() != mat.rows() {
            return Err(VortexError::RankMismatch {
                rows: mat.rows(),
                cols: mat.cols(),
                twist: twist.len(),
            });
        }
        if mat.rows() == 0 || mat.det().is_zero() {
            return Err(VortexError::SingularMatrix);
        }
        Ok(MeroMap { mat, twist })
    }

    pub fn rank(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &Mat<RatFunc> {
        &self.mat
    }

    pub fn twist(&self) -> &[i64] {
        &self.twist
    }

    /// `deg F = Σ a_i`.
    pub fn target_degree(&self) -> i64 {
        self.twist.iter().sum()
    }

    pub fn target(&self) -> Lattice {
        Lattice::twisted(&self.twist)
    }

    /// `G = f⁻¹(F)` inside the source space.
    pub fn pullback(&self) -> Lattice {
        let inv = self.mat.inverse().expect("nonsingular by construction");
        self.target().transform(&inv).expect("invertible transform")
    }
}

/// A point of `Quot(r, d_p, d_z)`: a chain `E ⊆ O^r`, `E ⊆ G`.
///
/// Both lattices are in canonical form, so `==` is equality of points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuotPoint {
    e: Lattice,
    g: Lattice,
    dp: u64,
    dz: u64,
}

impl QuotPoint {
    /// Verifies both containments and reads off the colengths.
    pub fn new(e: Lattice, g: Lattice) -> Result<Self, VortexError> {
        if e.rank() != g.rank() {
            return Err(VortexError::DimensionMismatch {
                left: e.rank(),
                right: g.rank(),
            });
        }
        let dp = Lattice::trivial(e.rank())
            .colength(&e)
            .ok_or(VortexError::NotAChain)?;
        let dz = g.colength(&e).ok_or(VortexError::NotAChain)?;
        Ok(QuotPoint { e, g, dp, dz })
    }

    /// For chains that hold by construction: degrees only.
    fn from_chain(e: Lattice, g: Lattice) -> Self {
        let dp = (-e.degree()) as u64;
        let dz = (g.degree() - e.degree()) as u64;
        QuotPoint { e, g, dp, dz }
    }

    pub fn e(&self) -> &Lattice {
        &self.e
    }

    pub fn g(&self) -> &Lattice {
        &self.g
    }

    pub fn dp(&self) -> u64 {
        self.dp
    }

    pub fn dz(&self) -> u64 {
        self.dz
    }

    pub fn rank(&self) -> usize {
        self.e.rank()
    }

    /// Laurent precision bound `2 (d_p + d_z + |deg G|) + 1` for the ∞ data.
    /// The stored ∞ data is exact; this is reported for consumers that
    /// truncate.
    pub fn precision(&self) -> u64 {
        2 * (self.dp + self.dz + self.g.degree().unsigned_abs()) + 1
    }
}

/// Pole/zero decomposition: `G = f⁻¹(F)`, `E = O^r ∩ G`.
pub fn decompose(f: &MeroMap) -> QuotPoint {
    let g = f.pullback();
    let e = Lattice::trivial(f.rank()).intersect(&g).expect("same rank");
    QuotPoint::from_chain(e, g)
}

/// Canonical coordinates of the equivalence class of `f`.
pub fn moduli_point(f: &MeroMap) -> QuotPoint {
    decompose(f)
}

/// `δ = (δ₁, δ₂)`: the divisors of `det E` relative to `O^r` and of `det E`
/// relative to `G`.
pub fn delta(p: &QuotPoint) -> (PDivisor, PDivisor) {
    let det_e = p.e.finite_det();
    let det_g = p.g.finite_det();
    let inf_e: i64 = p.e.inf_exponents().iter().sum();
    let inf_g: i64 = p.g.inf_exponents().iter().sum();

    let d1 = det_e.as_polynomial().expect("E ⊆ O^r").clone();
    let ratio = &det_e / &det_g;
    let d2 = ratio.as_polynomial().expect("E ⊆ G").clone();
    (
        PDivisor::new(d1, inf_e as u64).expect("nonzero"),
        PDivisor::new(d2, (inf_e - inf_g) as u64).expect("nonzero"),
    )
}

/// Section of `δ`: `E = O(-x) ⊕ O^{r-1}`, `G = O(-x + y) ⊕ O^{r-1}`.
///
/// When `x` and `y` share support the chain is kept as is; it is then a
/// boundary point, not a point coming from a map.
pub fn theta(x: &PDivisor, y: &PDivisor, r: usize) -> QuotPoint {
    assert!(r >= 1, "rank must be positive");
    let one = RatFunc::one();
    let px = RatFunc::from_poly(x.finite().clone());
    let py = RatFunc::from_poly(y.finite().clone());
    let mx = x.inf_mult() as i64;
    let my = y.inf_mult() as i64;

    let diag = |first: RatFunc| -> Mat<RatFunc> {
        let mut d: Vec<RatFunc> = alloc::vec![one.clone(); r];
        d[0] = first;
        Mat::diagonal(&d)
    };
    let e = Lattice::from_generators(&diag(px.clone()), &diag(RatFunc::z_pow(-mx)))
        .expect("nonsingular");
    let g = Lattice::from_generators(&diag(&px / &py), &diag(RatFunc::z_pow(my - mx)))
        .expect("nonsingular");
    QuotPoint::from_chain(e, g)
}

/// The point comes from an actual map: `E` is saturated in `G`.
pub fn is_in_q0(p: &QuotPoint) -> bool {
    Lattice::trivial(p.rank())
        .intersect(&p.g)
        .is_ok_and(|cap| cap == p.e)
}

/// The forced intertwiner `β = f₂ f₁⁻¹` when it is a global isomorphism
/// `F₁ → F₂`, `None` otherwise.
pub fn equivalence_witness(
    f1: &MeroMap,
    f2: &MeroMap,
) -> Result<Option<Mat<RatFunc>>, VortexError> {
    if f1.rank() != f2.rank() {
        return Err(VortexError::RankMismatch {
            rows: f1.rank(),
            cols: f2.rank(),
            twist: f2.twist.len(),
        });
    }
    let beta = &f2.mat * &f1.mat.inverse().expect("nonsingular by construction");

    // Finite places: β ∈ GL_r(Q[z]).
    if !beta.entries().iter().all(RatFunc::is_polynomial) || !beta.det().is_unit_constant() {
        return Ok(None);
    }
    // At ∞: z^{-a₂} β z^{a₁} ∈ GL_r(O_∞).
    let r = f1.rank();
    let local = Mat::from_fn(r, r, |i, j| {
        beta.get(i, j) * &RatFunc::z_pow(f1.twist[j] - f2.twist[i])
    });
    let regular = local
        .entries()
        .iter()
        .all(|x| x.valuation_at_infinity().is_none_or(|v| v >= 0));
    if !regular || local.det().valuation_at_infinity() != Some(0) {
        return Ok(None);
    }
    Ok(Some(beta))
}

pub fn is_equivalent(f1: &MeroMap, f2: &MeroMap) -> Result<bool, VortexError> {
    equivalence_witness(f1, f2).map(|w| w.is_some())
}

/// `(d_p, d_z)` from local elementary divisors, independently of the
/// lattice computation: at each place, positive exponents of the invariant
/// factors count zeros and negative exponents count poles.
pub fn snf_degrees(f: &MeroMap) -> Result<(u64, u64), VortexError> {
    let (mut poles, mut zeros) = (0u64, 0u64);

    // Finite chart: invariant factors of f itself.
    for e in invariant_factors(f.matrix())? {
        poles += e.den().degree().unwrap_or(0) as u64;
        zeros += e.num().degree().unwrap_or(0) as u64;
    }

    // Chart at ∞ in w = 1/z: the local matrix is z^{-a} f.
    let r = f.rank();
    let local = Mat::from_fn(r, r, |i, j| {
        (f.matrix().get(i, j) * &RatFunc::z_pow(-f.twist[i])).invert_variable()
    });
    let origin = crate::algebra::Place::point(Rat::zero());
    for e in invariant_factors(&local)? {
        let v = e.valuation(&origin)?;
        if v < 0 {
            poles += (-v) as u64;
        } else {
            zeros += v as u64;
        }
    }
    Ok((poles, zeros))
}

/// Invariant factors of a nonsingular matrix over `Q(z)` relative to
/// `Q[z]`, via Smith form of the denominator-cleared matrix.
fn invariant_factors(m: &Mat<RatFunc>) -> Result<Vec<RatFunc>, VortexError> {
    let denom = m
        .entries()
        .iter()
        .fold(Poly::<Rat>::one(), |acc, x| acc.lcm(x.den()));
    let cleared = m.map(|x| x.num() * &denom.exact_div(x.den()).expect("lcm is a multiple"));
    let snf = snf_poly(&cleared)?;
    let d = RatFunc::from_poly(denom);
    Ok(snf
        .invariant_factors()
        .into_iter()
        .map(|n| &RatFunc::from_poly(n) / &d)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Int;
    use alloc::vec;

    fn c(n: i64) -> RatFunc {
        RatFunc::from_int(n)
    }

    fn z() -> RatFunc {
        RatFunc::z()
    }

    fn zi(k: i64) -> RatFunc {
        RatFunc::z_pow(k)
    }

    fn qp(co: &[i64]) -> Poly<Rat> {
        Poly::new(
            co.iter()
                .map(|&x| Rat::from_integer(Int::from(x)))
                .collect(),
        )
    }

    fn map(r: usize, entries: Vec<RatFunc>, twist: &[i64]) -> MeroMap {
        MeroMap::new(Mat::new(r, r, entries), twist.to_vec()).unwrap()
    }

    #[test]
    fn construction_errors() {
        let singular = MeroMap::new(Mat::new(2, 2, vec![z(), c(0), c(0), c(0)]), vec![0, 0]);
        assert_eq!(singular, Err(VortexError::SingularMatrix));
        let short = MeroMap::new(Mat::new(1, 1, vec![z()]), vec![0, 0]);
        assert!(matches!(short, Err(VortexError::RankMismatch { .. })));
    }

    #[test]
    fn scalar_zero_and_pole() {
        let p = decompose(&map(1, vec![z()], &[1]));
        assert_eq!((p.dp(), p.dz()), (0, 1));
        let (d1, d2) = delta(&p);
        assert!(d1.is_empty());
        assert_eq!(d2, PDivisor::point(Rat::zero()));

        let p = decompose(&map(1, vec![zi(-1)], &[-1]));
        assert_eq!((p.dp(), p.dz()), (1, 0));
        assert_eq!(delta(&p).0, PDivisor::point(Rat::zero()));
    }

    #[test]
    fn unipotent_example() {
        let f = map(2, vec![c(1), zi(-1), c(0), c(1)], &[0, 0]);
        let p = decompose(&f);
        assert_eq!((p.dp(), p.dz()), (1, 1));
        let expected_e =
            Lattice::from_generators(&Mat::diagonal(&[c(1), z()]), &Mat::identity(2)).unwrap();
        assert_eq!(p.e(), &expected_e);
        let (d1, d2) = delta(&p);
        assert_eq!(d1, PDivisor::point(Rat::zero()));
        assert_eq!(d2, PDivisor::point(Rat::zero()));
        assert!(is_in_q0(&p));
    }

    #[test]
    fn diagonal_zero_and_pole_at_origin() {
        // With the trivial target, z also has a pole at ∞ and 1/z a zero there.
        let f = map(2, vec![z(), c(0), c(0), zi(-1)], &[0, 0]);
        let p = decompose(&f);
        assert_eq!((p.dp(), p.dz()), (2, 2));
        assert_eq!(snf_degrees(&f), Ok((2, 2)));
        let (d1, d2) = delta(&p);
        assert_eq!((d1.finite(), d2.finite()), (&qp(&[0, 1]), &qp(&[0, 1])));
        assert_eq!((d1.inf_mult(), d2.inf_mult()), (1, 1));

        // Twisting the target by (1, -1) absorbs the behaviour at ∞.
        let f = map(2, vec![z(), c(0), c(0), zi(-1)], &[1, -1]);
        let p = decompose(&f);
        assert_eq!((p.dp(), p.dz()), (1, 1));
        assert_eq!(
            delta(&p),
            (PDivisor::point(Rat::zero()), PDivisor::point(Rat::zero()))
        );
    }

    #[test]
    fn theta_examples() {
        let x = PDivisor::point(Rat::zero());
        let y = PDivisor::point(Rat::one());
        let p = theta(&x, &y, 2);
        assert_eq!((p.dp(), p.dz()), (1, 1));
        let expected_g = Lattice::from_generators(
            &Mat::diagonal(&[RatFunc::new(qp(&[0, 1]), qp(&[-1, 1])).unwrap(), c(1)]),
            &Mat::identity(2),
        )
        .unwrap();
        assert_eq!(p.g(), &expected_g);
        assert_eq!(delta(&p), (x.clone(), y));
        assert!(is_in_q0(&p));

        let p = theta(&x, &x, 1);
        assert_eq!((p.dp(), p.dz()), (1, 1));
        assert_eq!(p.g(), &Lattice::trivial(1));
        assert!(!is_in_q0(&p));
        assert_eq!(delta(&p), (x.clone(), x));

        let p = theta(&PDivisor::empty(), &PDivisor::empty(), 3);
        assert_eq!(p.e(), &Lattice::trivial(3));
        assert_eq!(p.g(), &Lattice::trivial(3));
    }

    #[test]
    fn theta_with_mass_at_infinity() {
        let x = PDivisor::infinity(2);
        let y = PDivisor::point(Rat::one()).add(&PDivisor::infinity(1));
        let p = theta(&x, &y, 2);
        assert_eq!((p.dp(), p.dz()), (2, 2));
        assert_eq!(delta(&p), (x, y));
        assert!(!is_in_q0(&p));
    }

    #[test]
    fn equivalence_examples() {
        let f1 = map(2, vec![z(), c(0), c(0), c(1)], &[1, 0]);
        let f2 = map(2, vec![z(), c(1), c(0), c(1)], &[1, 0]);
        let beta = equivalence_witness(&f1, &f2).unwrap().unwrap();
        assert_eq!(beta, Mat::new(2, 2, vec![c(1), c(1), c(0), c(1)]));
        assert!(is_equivalent(&f1, &f1).unwrap());
        assert_eq!(moduli_point(&f1), moduli_point(&f2));

        let f3 = map(2, vec![c(1), c(0), c(0), z()], &[0, 1]);
        assert!(!is_equivalent(&f1, &f3).unwrap());
        assert_ne!(moduli_point(&f1), moduli_point(&f3));

        let f4 = map(1, vec![z()], &[1]);
        assert!(matches!(
            is_equivalent(&f1, &f4),
            Err(VortexError::RankMismatch { .. })
        ));
    }

    #[test]
    fn identity_is_the_base_point() {
        let p = moduli_point(&map(
            3,
            Mat::<RatFunc>::identity(3).entries().to_vec(),
            &[0, 0, 0],
        ));
        assert_eq!(p.e(), &Lattice::trivial(3));
        assert_eq!(p.g(), &Lattice::trivial(3));
        assert_eq!((p.dp(), p.dz()), (0, 0));
    }

    #[test]
    fn polynomial_maps_have_no_finite_poles() {
        let f = map(
            2,
            vec![&z() * &z() + &c(1), z(), c(3), &z() - &c(2)],
            &[0, 0],
        );
        let (d1, d2) = delta(&decompose(&f));
        assert!(d1.finite().is_one());
        assert_eq!(d2.finite(), &f.matrix().det().num().monic());

        // Twisting by the row degrees removes the pole at ∞ as well.
        let g = map(2, f.matrix().entries().to_vec(), &[2, 1]);
        let p = decompose(&g);
        assert_eq!((p.dp(), p.dz()), (0, 3));
    }

    #[test]
    fn lattice_and_snf_routes_agree() {
        let f = map(
            2,
            vec![
                RatFunc::new(qp(&[1, 1]), qp(&[0, 0, 1])).unwrap(),
                z(),
                RatFunc::new(qp(&[2]), qp(&[-1, 1])).unwrap(),
                &z() * &z(),
            ],
            &[1, -2],
        );
        let p = decompose(&f);
        assert_eq!(snf_degrees(&f), Ok((p.dp(), p.dz())));
        assert_eq!(p.dz() as i64 - p.dp() as i64, f.target_degree());
    }
}
