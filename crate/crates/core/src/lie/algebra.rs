//! Matrix Lie algebras with a chosen basis, their structure constants and
//! the (co)adjoint actions in coordinates.

use num_traits::{One, Zero};
use serde::Serialize;

use super::qmat::{dot, is_zero_vec, q, QMatrix, Q};
use super::LieError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Sl(usize),
    Sl2Semidirect,
    Sl3Centralizer,
}

impl Family {
    pub fn name(&self) -> String {
        match self {
            Family::Sl(n) => format!("sl({n})"),
            Family::Sl2Semidirect => "sl2-semidirect".into(),
            Family::Sl3Centralizer => "sl3-centralizer".into(),
        }
    }
}

/// A Lie algebra realised inside `gl(N)`.
///
/// Dual coordinates are taken against the basis: `<xi, y> = sum xi_k y_k`.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    pub family: Family,
    pub labels: Vec<String>,
    /// Basis matrices.
    pub basis: Vec<QMatrix>,
    /// `brackets[i][j]` lists the nonzero `(k, c_ij^k)`.
    pub brackets: Vec<Vec<Vec<(usize, Q)>>>,
    /// Gram matrix of the trace form on the basis, when it is nondegenerate.
    pub trace_form: Option<QMatrix>,
}

fn e(n: usize, i: usize, j: usize) -> QMatrix {
    let mut m = QMatrix::zeros(n, n);
    m[(i, j)] = Q::one();
    m
}

impl LieAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix_size(&self) -> usize {
        self.basis[0].rows
    }

    /// Basis coordinates of a matrix in the algebra.
    pub fn coords(&self, m: &QMatrix) -> Result<Vec<Q>, LieError> {
        let v = match self.family {
            Family::Sl(n) => {
                if !m.trace().is_zero() {
                    return Err(LieError::NotInAlgebra("trace is not zero".into()));
                }
                let mut v = Vec::with_capacity(n * n - 1);
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            v.push(m[(i, j)].clone());
                        }
                    }
                }
                let mut acc = Q::zero();
                for i in 0..n - 1 {
                    acc += m[(i, i)].clone();
                    v.push(acc.clone());
                }
                v
            }
            Family::Sl2Semidirect => vec![
                m[(0, 0)].clone(),
                m[(0, 1)].clone(),
                m[(1, 0)].clone(),
                m[(0, 2)].clone(),
                m[(1, 2)].clone(),
            ],
            Family::Sl3Centralizer => vec![
                m[(0, 0)].clone(),
                m[(0, 1)].clone(),
                m[(1, 2)].clone(),
                m[(0, 2)].clone(),
            ],
        };
        if self.element(&v) != *m {
            return Err(LieError::NotInAlgebra(format!(
                "matrix is outside {}",
                self.family.name()
            )));
        }
        Ok(v)
    }

    pub fn element(&self, coords: &[Q]) -> QMatrix {
        let n = self.matrix_size();
        let mut m = QMatrix::zeros(n, n);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                m = m.add(&b.scale(c));
            }
        }
        m
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let s = xi * yj;
                for (k, c) in &self.brackets[i][j] {
                    out[*k] += &s * c;
                }
            }
        }
        out
    }

    /// `ad_x` as a matrix on coordinates.
    pub fn ad(&self, x: &[Q]) -> QMatrix {
        let d = self.dim();
        let mut m = QMatrix::zeros(d, d);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for j in 0..d {
                for (k, c) in &self.brackets[i][j] {
                    m[(*k, j)] += xi * c;
                }
            }
        }
        m
    }

    /// `ad*_x = -(ad_x)^T`, so that `<ad*_x xi, y> = -<xi, [x, y]>`.
    pub fn coad(&self, x: &[Q]) -> QMatrix {
        self.ad(x).transpose().scale(&q(-1))
    }

    /// Columns `ad*_{b_i} xi`; its kernel is the centralizer of `xi`.
    pub fn orbit_tangent(&self, xi: &[Q]) -> QMatrix {
        // (ad*_{b_i} xi)_j = -<xi, [b_i, b_j]>
        let d = self.dim();
        let mut m = QMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = Q::zero();
                for (k, c) in &self.brackets[i][j] {
                    acc -= c * &xi[*k];
                }
                m[(j, i)] = acc;
            }
        }
        m
    }

    /// Antisymmetry and Jacobi on all basis pairs and triples.
    pub fn verify(&self) -> Result<(), LieError> {
        let d = self.dim();
        let dense = |terms: &[(usize, Q)]| {
            let mut v = vec![Q::zero(); d];
            for (k, c) in terms {
                v[*k] += c;
            }
            v
        };
        for i in 0..d {
            for j in i..d {
                let a = dense(&self.brackets[i][j]);
                let b = dense(&self.brackets[j][i]);
                if a.iter().zip(&b).any(|(x, y)| *x != -y.clone()) {
                    return Err(LieError::Structure(format!("antisymmetry fails for ({i}, {j})")));
                }
            }
        }
        // [e_a, [e_b, e_c]] through the sparse constants
        let nested = |a: usize, b: usize, c: usize, acc: &mut Vec<Q>| {
            for (l, s) in &self.brackets[b][c] {
                for (k, t) in &self.brackets[a][*l] {
                    acc[*k] += s * t;
                }
            }
        };
        let mut acc = vec![Q::zero(); d];
        for i in 0..d {
            for j in 0..d {
                for k in j + 1..d {
                    nested(i, j, k, &mut acc);
                    nested(j, k, i, &mut acc);
                    nested(k, i, j, &mut acc);
                    if !is_zero_vec(&acc) {
                        return Err(LieError::Structure(format!("Jacobi fails for ({i}, {j}, {k})")));
                    }
                }
            }
        }
        if let Some(k) = &self.trace_form {
            if k.rank() != d {
                return Err(LieError::Structure("trace form is degenerate".into()));
            }
        }
        Ok(())
    }

    /// Dual coordinates of `x` under the trace form.
    pub fn flat(&self, x: &[Q]) -> Option<Vec<Q>> {
        self.trace_form.as_ref().map(|k| k.mul_vec(x))
    }

    pub fn pair(&self, xi: &[Q], y: &[Q]) -> Q {
        dot(xi, y)
    }

    pub fn is_abelian_span(&self, vectors: &[Vec<Q>]) -> bool {
        vectors
            .iter()
            .enumerate()
            .all(|(i, a)| vectors[i + 1..].iter().all(|b| is_zero_vec(&self.bracket(a, b))))
    }

    /// Algebra element for one of the designated vectors of `sl(n)`.
    pub fn sl_matrix_coords(&self, m: &QMatrix) -> Vec<Q> {
        self.coords(m).expect("designated element lies in the algebra")
    }
}

fn from_basis(
    family: Family,
    labels: Vec<String>,
    basis: Vec<QMatrix>,
    with_trace_form: bool,
) -> Result<LieAlgebra, LieError> {
    let d = basis.len();
    let mut alg = LieAlgebra {
        family,
        labels,
        basis,
        brackets: Vec::new(),
        trace_form: None,
    };
    let mut brackets = vec![vec![Vec::new(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let c = alg.basis[i].commutator(&alg.basis[j]);
            let v = alg.coords(&c)?;
            brackets[i][j] = v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        }
    }
    alg.brackets = brackets;
    if with_trace_form {
        let mut k = QMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                k[(i, j)] = alg.basis[i].mul(&alg.basis[j]).trace();
            }
        }
        alg.trace_form = Some(k);
    }
    Ok(alg)
}

/// `sl(n)`: `E_ij` for `i != j` in row-major order, then `H_i = E_ii - E_(i+1)(i+1)`.
pub fn sl(n: usize) -> Result<LieAlgebra, LieError> {
    if !(2..=12).contains(&n) {
        return Err(LieError::InvalidInput(format!("sl(n) needs 2 <= n <= 12, got {n}")));
    }
    let mut labels = Vec::new();
    let mut basis = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                labels.push(format!("E{}{}", i + 1, j + 1));
                basis.push(e(n, i, j));
            }
        }
    }
    for i in 0..n - 1 {
        labels.push(format!("H{}", i + 1));
        basis.push(e(n, i, i).sub(&e(n, i + 1, i + 1)));
    }
    from_basis(Family::Sl(n), labels, basis, true)
}

/// `sl(2)` acting on `C^2`, inside `gl(3)` as `[[x, u], [0, 0]]`.
pub fn sl2_semidirect() -> Result<LieAlgebra, LieError> {
    let x1 = e(3, 0, 0).sub(&e(3, 1, 1));
    let basis = vec![x1, e(3, 0, 1), e(3, 1, 0), e(3, 0, 2), e(3, 1, 2)];
    let labels = ["X1", "X2", "X3", "V1", "V2"].map(String::from).to_vec();
    from_basis(Family::Sl2Semidirect, labels, basis, false)
}

/// Centralizer of `E13` in `sl(3)`; coordinates `(t, x, y, z)`.
pub fn sl3_centralizer() -> Result<LieAlgebra, LieError> {
    let t = e(3, 0, 0).add(&e(3, 2, 2)).sub(&e(3, 1, 1).scale(&q(2)));
    let basis = vec![t, e(3, 0, 1), e(3, 1, 2), e(3, 0, 2)];
    let labels = ["t", "x", "y", "z"].map(String::from).to_vec();
    from_basis(Family::Sl3Centralizer, labels, basis, false)
}

pub fn make_algebra(family: Family) -> Result<LieAlgebra, LieError> {
    let alg = match family {
        Family::Sl(n) => sl(n)?,
        Family::Sl2Semidirect => sl2_semidirect()?,
        Family::Sl3Centralizer => sl3_centralizer()?,
    };
    alg.verify()?;
    Ok(alg)
}

/// Smallest centralizer dimension over the dual, per family.
pub fn minimal_centralizer_dim(family: Family) -> usize {
    match family {
        Family::Sl(n) => n - 1,
        Family::Sl2Semidirect => 1,
        // generic stabilizers contain both the r- and c-directions
        Family::Sl3Centralizer => 2,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerReport {
    pub dimension: usize,
    pub regular: bool,
    pub abelian: bool,
    #[serde(serialize_with = "ser_basis")]
    pub basis: Vec<Vec<Q>>,
}

fn ser_basis<S: serde::Serializer>(b: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(b.len()))?;
    for v in b {
        seq.serialize_element(&super::qmat::format_vec(v))?;
    }
    seq.end()
}

/// Centralizer of a dual point, by exact nullspace.
pub fn centralizer_report(alg: &LieAlgebra, xi: &[Q]) -> CentralizerReport {
    let basis = alg.orbit_tangent(xi).nullspace();
    let dimension = basis.len();
    CentralizerReport {
        dimension,
        regular: dimension == minimal_centralizer_dim(alg.family),
        abelian: alg.is_abelian_span(&basis),
        basis,
    }
}

/// `e`, `h`, `f` of `sl(n)` as coordinates.
pub fn sl_triple(alg: &LieAlgebra) -> (Vec<Q>, Vec<Q>, Vec<Q>) {
    let Family::Sl(n) = alg.family else {
        panic!("sl_triple on {}", alg.family.name())
    };
    let ev = alg.sl_matrix_coords(&e(n, 0, 1));
    let hv = alg.sl_matrix_coords(&e(n, 0, 0).sub(&e(n, 1, 1)));
    let fv = alg.sl_matrix_coords(&e(n, 1, 0));
    (ev, hv, fv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_and_jacobi() {
        assert_eq!(make_algebra(Family::Sl(2)).unwrap().dim(), 3);
        assert_eq!(make_algebra(Family::Sl(4)).unwrap().dim(), 15);
        assert_eq!(make_algebra(Family::Sl2Semidirect).unwrap().dim(), 5);
        assert_eq!(make_algebra(Family::Sl3Centralizer).unwrap().dim(), 4);
        assert!(sl(1).is_err());
    }

    #[test]
    fn ad_e_in_sl2() {
        let a = sl(2).unwrap();
        let (e, h, f) = sl_triple(&a);
        let ad = a.ad(&e);
        let neg2e: Vec<Q> = e.iter().map(|x| x * q(-2)).collect();
        assert_eq!(ad.mul_vec(&h), neg2e);
        assert_eq!(ad.mul_vec(&f), h);
        assert!(a.ad(&[q(0), q(0), q(0)]).is_zero());
    }

    #[test]
    fn semidirect_bracket_acts_on_vectors() {
        let a = sl2_semidirect().unwrap();
        // [(x, 0), (0, v)] = (0, x v) with x = [[1, 2], [3, -1]], v = (5, 7)
        let x = vec![q(1), q(2), q(3), q(0), q(0)];
        let v = vec![q(0), q(0), q(0), q(5), q(7)];
        assert_eq!(a.bracket(&x, &v), vec![q(0), q(0), q(0), q(19), q(8)]);
    }

    #[test]
    fn broken_structure_is_reported() {
        let mut a = sl(2).unwrap();
        a.brackets[0][1].push((0, q(1)));
        assert!(a.verify().is_err());
    }

    #[test]
    fn coords_reject_outside_matrices() {
        let a = sl3_centralizer().unwrap();
        assert!(a.coords(&e(3, 1, 0)).is_err());
    }
}
