//! The Fuchsian system satisfied by the product vector
//! `w = (f1 f2, x f1' f2, x f1 f2', x^2 f1' f2')`, its reduction to Okubo
//! normal form, and the left-eigenvector matrix that diagonalizes `A0`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{int, j2, rat, Matrix, Poly, Scalar};

use super::params::HGParams;

/// `dw/dx = (H0/x + H1/(x-1)) w`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuchsianSystem {
    pub residue_at_0: Matrix,
    pub residue_at_1: Matrix,
    pub description: String,
}

impl FuchsianSystem {
    pub fn residue_at_infinity(&self) -> Matrix {
        -&(&self.residue_at_0 + &self.residue_at_1)
    }
}

/// Local exponents of the product system at `0`, `1` and `infinity`.
pub fn riemann_scheme(p: &HGParams) -> [[Scalar; 4]; 3] {
    let (a1, a2, b1, b2, g1, g2) = (&p.alpha1, &p.alpha2, &p.beta1, &p.beta2, &p.gamma1, &p.gamma2);
    let one = int(1);
    [
        [int(0), &one - g1, &one - g2, int(2) - g1 - g2],
        [
            int(0),
            g1 - &one - a1 - b1,
            g2 - &one - a2 - b2,
            g1 + g2 - int(2) - a1 - a2 - b1 - b2,
        ],
        [a1 + a2, b1 + b2, a1 + b2, b1 + a2],
    ]
}

/// `prod (t - r)` over the given roots.
pub fn poly_with_roots(roots: &[Scalar]) -> Poly {
    roots
        .iter()
        .fold(Poly::one(), |acc, r| acc * Poly::linear_root(r))
}

pub fn build_product_system(p: &HGParams) -> FuchsianSystem {
    let (a1, a2, b1, b2, g1, g2) = (&p.alpha1, &p.alpha2, &p.beta1, &p.beta2, &p.gamma1, &p.gamma2);
    let one = int(1);
    let z = Scalar::zero;
    let h0 = Matrix::square(vec![
        vec![z(), int(1), int(1), z()],
        vec![z(), &one - g1, z(), int(1)],
        vec![z(), z(), &one - g2, int(1)],
        vec![z(), z(), z(), int(2) - g1 - g2],
    ]);
    let ab1 = -(a1 * b1);
    let ab2 = -(a2 * b2);
    let h1 = Matrix::square(vec![
        vec![z(), z(), z(), z()],
        vec![ab1.clone(), g1 - &one - a1 - b1, z(), z()],
        vec![ab2.clone(), z(), g2 - &one - a2 - b2, z()],
        vec![z(), ab2, ab1, g1 + g2 - int(2) - a1 - a2 - b1 - b2],
    ]);
    FuchsianSystem {
        residue_at_0: h0,
        residue_at_1: h1,
        description: "product of two Gauss hypergeometric functions".into(),
    }
}

/// `phi(t) = det(t I + H0 + H1)` in factored form.
pub fn infinity_charpoly_closed_form(p: &HGParams) -> Poly {
    let [_, _, inf] = riemann_scheme(p);
    poly_with_roots(&inf)
}

/// `diag(0, 0, 1, 1)`
pub fn okubo_t() -> Matrix {
    Matrix::diag(&[int(0), int(0), int(1), int(1)])
}

/// Local exponent data `(a, b, c, d)`: `0, 0, +-a` at `x = 0`, `0, 0, +-b`
/// at `x = 1` and `+-c, +-d` at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exponents {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
}

/// `(x I - T) du/dx = A u` with `T = diag(0, 0, 1, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OkuboSystem {
    t: Matrix,
    a: Matrix,
    exponents: Exponents,
}

impl OkuboSystem {
    pub fn new(a: Matrix, exponents: Exponents) -> Self {
        OkuboSystem {
            t: okubo_t(),
            a,
            exponents,
        }
    }

    pub fn t(&self) -> &Matrix {
        &self.t
    }

    pub fn coefficient(&self) -> &Matrix {
        &self.a
    }

    pub fn exponents(&self) -> &Exponents {
        &self.exponents
    }

    pub fn upper_right(&self) -> Matrix {
        self.a.block(0, 2, 2)
    }

    pub fn lower_left(&self) -> Matrix {
        self.a.block(2, 0, 2)
    }

    /// Diagonal blocks must equal `aJ` and `bJ`.
    pub fn check_block_form(&self) -> Result<()> {
        check_block_form(&self.a, &self.exponents.a, &self.exponents.b)
    }

    /// `(t^2 - c^2)(t^2 - d^2)`
    pub fn expected_charpoly(&self) -> Poly {
        Poly::difference_of_squares(&self.exponents.c) * Poly::difference_of_squares(&self.exponents.d)
    }

    pub fn has_expected_spectrum(&self) -> bool {
        self.a.charpoly() == self.expected_charpoly()
    }
}

pub fn check_block_form(a: &Matrix, ea: &Scalar, eb: &Scalar) -> Result<()> {
    if a.dim() != 4 {
        return Err(Error::BlockStructure(format!("expected 4x4, got {0}x{0}", a.dim())));
    }
    if a.block(0, 0, 2) != j2().scale(ea) {
        return Err(Error::BlockStructure("upper-left block is not aJ".into()));
    }
    if a.block(2, 2, 2) != j2().scale(eb) {
        return Err(Error::BlockStructure("lower-right block is not bJ".into()));
    }
    Ok(())
}

/// Quotient that names the vanishing factor instead of panicking.
pub(crate) fn div_named(num: Scalar, den: &Scalar, name: &str) -> Result<Scalar> {
    if den.is_zero() {
        Err(Error::VanishingFactor(name.to_string()))
    } else {
        Ok(num / den)
    }
}

/// The residues `H0, H1` with the okubo constraint substituted.
pub fn okubo_tilde_residues(p: &HGParams) -> Result<(Matrix, Matrix)> {
    p.require_okubo()?;
    let s = build_product_system(p);
    Ok((s.residue_at_0, s.residue_at_1))
}

/// The same residues written in lambda form.
pub fn okubo_tilde_lambda_form(p: &HGParams) -> (Matrix, Matrix) {
    let l = |s: &str| p.lam(s);
    let z = Scalar::zero;
    let h0 = &Matrix::scalar(4, l("----"))
        + &Matrix::square(vec![
            vec![l("++++"), int(1), int(1), z()],
            vec![z(), z(), z(), int(1)],
            vec![z(), z(), z(), int(1)],
            vec![z(), z(), z(), l("----")],
        ]);
    let m1 = int(-4) * l("+000") * l("00+0");
    let m2 = int(-4) * l("0+00") * l("000+");
    let h1 = Matrix::square(vec![
        vec![z(), z(), z(), z()],
        vec![m1.clone(), l("-+-+"), z(), z()],
        vec![m2.clone(), z(), l("+-+-"), z()],
        vec![z(), m2, m1, z()],
    ]);
    (h0, h1)
}

/// Gauge matrix `P` in `w = x^{lambda(----)} P u`.
pub fn build_p(p: &HGParams) -> Matrix {
    let l = |s: &str| p.lam(s);
    let z = Scalar::zero;
    let lm = l("----");
    Matrix::square(vec![
        vec![int(1), int(1), z(), z()],
        vec![z(), lm.clone(), l("+-+-"), z()],
        vec![z(), lm.clone(), z(), l("-+-+")],
        vec![
            z(),
            &lm * &lm,
            int(4) * l("0+00") * l("000+"),
            int(4) * l("+000") * l("00+0"),
        ],
    ])
}

pub fn det_p_closed_form(p: &HGParams) -> Scalar {
    p.lam("----") * p.lam("++--") * p.lam("+-+-") * p.lam("+--+")
}

/// Closed form of `P^{-1}` in lambda notation.
pub fn p_inverse_closed_form(p: &HGParams) -> Result<Matrix> {
    let l = |s: &str| p.lam(s);
    let d = |n: Scalar, s: &str| div_named(n, &l(s), &format!("lambda({s})"));
    let z = Scalar::zero;
    let k1 = int(4) * l("0+00") * l("000+");
    let k2 = int(4) * l("+000") * l("00+0");
    let inner = Matrix::square(vec![
        vec![
            l("++--") * l("+--+"),
            d(k1.clone(), "++++")?,
            d(k2.clone(), "----")?,
            d(l("+-+-"), "----")?,
        ],
        vec![z(), d(k1.clone(), "----")?, d(k2.clone(), "++++")?, d(l("-+-+"), "----")?],
        vec![z(), d(l("-+++") * l("++-+"), "-+-+")?, d(k2, "+-+-")?, int(1)],
        vec![z(), d(k1, "+-+-")?, d(l("+-++") * l("+++-"), "-+-+")?, int(-1)],
    ]);
    let scale = div_named(int(1), &(l("++--") * l("+--+")), "lambda(++--) lambda(+--+)")?;
    Ok(inner.scale(&scale))
}

/// `(P, A0)`: the gauge matrix and the Okubo system
/// `A0 = P^{-1}(H0~ - lambda(----) I)P + P^{-1} H1~ P`.
pub fn build_okubo_zero(p: &HGParams) -> Result<(Matrix, OkuboSystem)> {
    p.require_okubo()?;
    let pm = build_p(p);
    if pm.det().is_zero() {
        return Err(Error::DegenerateParameters(
            "det P = lambda(----) lambda(++--) lambda(+-+-) lambda(+--+) vanishes".into(),
        ));
    }
    let (h0, h1) = okubo_tilde_residues(p)?;
    let shifted = &h0 - &Matrix::scalar(4, p.lam("----"));
    let a0 = &shifted.conjugate_by(&pm)? + &h1.conjugate_by(&pm)?;
    let exponents = Exponents {
        a: p.lam("++++"),
        b: p.lam("-+-+"),
        c: p.lam("++--"),
        d: p.lam("+--+"),
    };
    Ok((pm, OkuboSystem::new(a0, exponents)))
}

/// The two conjugated residues `P^{-1}(H0~ - lambda(----))P` and `P^{-1} H1~ P`.
pub fn okubo_zero_residues(p: &HGParams) -> Result<(Matrix, Matrix)> {
    let (pm, _) = build_okubo_zero(p)?;
    let (h0, h1) = okubo_tilde_residues(p)?;
    let shifted = &h0 - &Matrix::scalar(4, p.lam("----"));
    Ok((shifted.conjugate_by(&pm)?, h1.conjugate_by(&pm)?))
}

/// Closed form of `A0` in lambda notation.
pub fn a0_closed_form(p: &HGParams) -> Result<Matrix> {
    let l = |s: &str| p.lam(s);
    let d = |n: Scalar, s: &str| div_named(n, &l(s), &format!("lambda({s})"));
    let k1 = int(4) * l("0+00") * l("000+");
    let k2 = int(4) * l("+000") * l("00+0");
    let upper = Matrix::square(vec![
        vec![d(l("+-++") * l("+++-"), "++++")?, d(l("-+++") * l("++-+"), "++++")?],
        vec![d(k1.clone(), "----")?, d(k2.clone(), "----")?],
    ]);
    let lower = Matrix::square(vec![
        vec![d(k2, "-+-+")?, d(l("-+++") * l("++-+"), "-+-+")?],
        vec![d(k1, "+-+-")?, d(l("+-++") * l("+++-"), "+-+-")?],
    ]);
    Ok(Matrix::from_blocks(
        &j2().scale(&l("++++")),
        &upper,
        &lower,
        &j2().scale(&l("-+-+")),
    ))
}

/// `diag(lambda(++--) J, lambda(+--+) J)`
pub fn spectral_form(p: &HGParams) -> Matrix {
    let c = p.lam("++--");
    let d = p.lam("+--+");
    Matrix::diag(&[c.clone(), -c, d.clone(), -d])
}

/// Matrix of left eigenvectors of `A0` with `R A0 R^{-1} = diag(cJ, dJ)`.
pub fn build_r(p: &HGParams) -> Result<Matrix> {
    let l = |s: &str| p.lam(s);
    for s in ["+000", "0+00", "00+0", "000+"] {
        if l(s).is_zero() {
            return Err(Error::VanishingFactor(format!("lambda({s})")));
        }
    }
    let two = int(2);
    let four = int(4);
    let row = |u: &str, v: &str, w: &str, x: &str| -> Vec<Scalar> {
        // (1, l(u)l(v)/(4 l(w)l(x)), l(v)/(2 l(w)), l(u)/(2 l(x)))
        vec![
            int(1),
            l(u) * l(v) / (&four * l(w) * l(x)),
            l(v) / (&two * l(w)),
            l(u) / (&two * l(x)),
        ]
    };
    let r = Matrix::square(vec![
        row("-+++", "+-++", "+000", "0+00"),
        row("++-+", "+++-", "00+0", "000+"),
        row("-+++", "+++-", "+000", "000+"),
        row("++-+", "+-++", "00+0", "0+00"),
    ]);
    if r.det().is_zero() {
        return Err(Error::DegenerateParameters(
            "det R vanishes (a factor of lambda(++++) lambda(++--) lambda(+-+-) lambda(+--+) lambda(+0-0) lambda(0+0-) is zero)".into(),
        ));
    }
    Ok(r)
}

pub fn det_r_closed_form(p: &HGParams) -> Result<Scalar> {
    let l = |s: &str| p.lam(s);
    let num = l("++++") * l("++--") * l("+-+-") * l("+--+") * l("+0-0") * l("+0-0") * l("0+0-") * l("0+0-");
    let den = int(16) * [l("+000"), l("0+00"), l("00+0"), l("000+")]
        .iter()
        .map(|x| x * x)
        .product::<Scalar>();
    div_named(num, &den, "lambda(+000) lambda(0+00) lambda(00+0) lambda(000+)")
}

/// Closed form of `R P^{-1}`: rows `(1, 1/x, 1/y, 1/(xy))` for
/// `(x, y) = (a1, a2), (b1, b2), (a1, b2), (b1, a2)`.
pub fn rp_inverse_closed_form(p: &HGParams) -> Result<Matrix> {
    let pairs = [
        (&p.alpha1, &p.alpha2, "alpha1", "alpha2"),
        (&p.beta1, &p.beta2, "beta1", "beta2"),
        (&p.alpha1, &p.beta2, "alpha1", "beta2"),
        (&p.beta1, &p.alpha2, "beta1", "alpha2"),
    ];
    let rows = pairs
        .iter()
        .map(|(x, y, nx, ny)| {
            Ok(vec![
                int(1),
                div_named(int(1), x, nx)?,
                div_named(int(1), y, ny)?,
                div_named(int(1), &(*x * *y), &format!("{nx} {ny}"))?,
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

/// Sample parameters `(1/3, 1/5, 1/7, 1/11)` with the okubo gamma, used across tests and examples.
pub fn sample_params() -> HGParams {
    HGParams::okubo(rat(1, 3), rat(1, 5), rat(1, 7), rat(1, 11))
}
