use num_traits::{One, Zero};

use super::stabilizer::{infinitesimal_action, so_basis};
use super::Spin7Error;
use crate::exterior::{FormBasis, FormError, Multivector};
use crate::linalg::{self, Matrix, Vector};
use crate::{q, Q};

/// One invariant subspace of a [`TypeSplit`].
#[derive(Debug, Clone)]
pub struct Block {
    pub label: String,
    pub basis: Vec<Multivector>,
}

impl Block {
    fn new(label: &str, fb: &FormBasis, coords: Vec<Vector>) -> Self {
        Self {
            label: label.to_string(),
            basis: coords.iter().map(|c| Multivector::from_coords(fb, c)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    fn coords(&self) -> Vec<Vector> {
        match self.basis.first() {
            None => Vec::new(),
            Some(b) => {
                let fb = FormBasis::new(b.dim(), b.degree());
                self.basis.iter().map(|v| v.coords(&fb)).collect()
            }
        }
    }

    /// Orthogonal projection onto this block.
    pub fn project(&self, a: &Multivector) -> Multivector {
        let fb = FormBasis::new(a.dim(), a.degree());
        Multivector::from_coords(&fb, &linalg::project(&self.coords(), &a.coords(&fb)))
    }

    pub fn contains(&self, a: &Multivector) -> bool {
        let fb = FormBasis::new(a.dim(), a.degree());
        linalg::in_span(&self.coords(), &a.coords(&fb))
    }

    /// Matrix of the orthogonal projector in monomial coordinates.
    pub fn projector(&self) -> Matrix {
        let b = &self.basis[0];
        let fb = FormBasis::new(b.dim(), b.degree());
        let columns: Vec<Vector> = (0..fb.len())
            .map(|i| self.project(&fb.element(i)).coords(&fb))
            .collect();
        linalg::transpose(&columns)
    }
}

/// Decomposition of the r-forms on R^n into invariant subspaces.
#[derive(Debug, Clone)]
pub struct TypeSplit {
    pub dim: usize,
    pub degree: usize,
    pub form: Multivector,
    pub blocks: Vec<Block>,
}

impl TypeSplit {
    pub fn ranks(&self) -> Vec<usize> {
        self.blocks.iter().map(Block::rank).collect()
    }

    pub fn block(&self, label: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.label == label)
    }

    /// Blocks are pairwise orthogonal and their ranks add up to C(n, r).
    pub fn is_orthogonal_decomposition(&self) -> bool {
        let total: usize = self.ranks().iter().sum();
        if total != FormBasis::new(self.dim, self.degree).len() {
            return false;
        }
        for (i, a) in self.blocks.iter().enumerate() {
            for b in &self.blocks[i + 1..] {
                for x in &a.basis {
                    for y in &b.basis {
                        if !x.inner(y).expect("same shape").is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        self.blocks
            .iter()
            .all(|b| linalg::rank(&b.coords()) == b.rank())
    }
}

/// Matrix of a linear map between form spaces, in monomial coordinates
/// (column j = image of the j-th basis monomial).
pub fn operator_matrix<F>(input: &FormBasis, output: &FormBasis, f: F) -> Matrix
where
    F: Fn(&Multivector) -> Multivector,
{
    let columns: Vec<Vector> = (0..input.len())
        .map(|j| f(&input.element(j)).coords(output))
        .collect();
    linalg::transpose(&columns)
}

fn eigenspace(op: &Matrix, lambda: &Q) -> Vec<Vector> {
    let n = op.len();
    let mut shifted = op.clone();
    for (i, row) in shifted.iter_mut().enumerate() {
        row[i] -= lambda;
    }
    linalg::kernel(&shifted, n)
}

fn check_cayley_shape(phi: &Multivector) -> Result<(), Spin7Error> {
    if phi.dim() != 8 || phi.degree() != 4 {
        return Err(FormError::WrongShape { dim: 8, degree: 4 }.into());
    }
    Ok(())
}

/// Splits the 2-forms into the 3- and (-1)-eigenspaces of a -> *(Phi ^ a).
pub fn two_form_split(phi: &Multivector) -> Result<TypeSplit, Spin7Error> {
    check_cayley_shape(phi)?;
    let fb = FormBasis::new(8, 2);
    let op = operator_matrix(&fb, &fb, |a| phi.wedge(a).expect("dim 8").hodge_star());
    let seven = eigenspace(&op, &q(3));
    let twenty_one = eigenspace(&op, &q(-1));
    if (seven.len(), twenty_one.len()) != (7, 21) {
        return Err(Spin7Error::NotAdmissible(format!(
            "*(Phi ^ .) on 2-forms has eigenspace ranks {} (eigenvalue 3) and {} (eigenvalue -1), expected 7 and 21",
            seven.len(),
            twenty_one.len()
        )));
    }
    Ok(TypeSplit {
        dim: 8,
        degree: 2,
        form: phi.clone(),
        blocks: vec![Block::new("7", &fb, seven), Block::new("21", &fb, twenty_one)],
    })
}

/// Lambda^3 = {v -| Phi} + its orthogonal complement.
pub fn three_form_split(phi: &Multivector) -> Result<TypeSplit, Spin7Error> {
    two_form_split(phi)?;
    let fb = FormBasis::new(8, 3);
    let contractions: Vec<Vector> = (1..=8)
        .map(|i| phi.contract_basis(i).map(|c| c.coords(&fb)))
        .collect::<Result<_, _>>()?;
    let eight = linalg::span_basis(&contractions);
    if eight.len() != 8 {
        return Err(Spin7Error::NotAdmissible(format!(
            "contractions v -| Phi span a space of rank {}, expected 8",
            eight.len()
        )));
    }
    let rest = linalg::orthogonal_complement(&eight, fb.len());
    Ok(TypeSplit {
        dim: 8,
        degree: 3,
        form: phi.clone(),
        blocks: vec![Block::new("8", &fb, eight), Block::new("48", &fb, rest)],
    })
}

/// Lambda^4 = span(Phi) + so(8).Phi + the rest of the self-dual forms + the
/// anti-self-dual forms.
pub fn four_form_split(phi: &Multivector) -> Result<TypeSplit, Spin7Error> {
    two_form_split(phi)?;
    if phi.hodge_star() != *phi {
        return Err(Spin7Error::NotAdmissible("Phi is not self-dual".into()));
    }
    let fb = FormBasis::new(8, 4);
    let star = operator_matrix(&fb, &fb, Multivector::hodge_star);
    let anti = eigenspace(&star, &q(-1));
    let phi_c = phi.coords(&fb);
    let tangent: Vec<Vector> = so_basis(8)
        .iter()
        .map(|a| infinitesimal_action(a, phi).coords(&fb))
        .collect();
    let seven = linalg::span_basis(&tangent);
    if seven.len() != 7 {
        return Err(Spin7Error::NotAdmissible(format!(
            "so(8) orbit of Phi has tangent rank {}, expected 7",
            seven.len()
        )));
    }
    // self-dual, orthogonal to Phi and to so(8).Phi
    let mut conditions: Vec<Vector> = star
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r[i] -= Q::one();
            r
        })
        .collect();
    conditions.push(phi_c.clone());
    conditions.extend(seven.iter().cloned());
    let rest = linalg::kernel(&conditions, fb.len());
    if rest.len() != 27 {
        return Err(Spin7Error::NotAdmissible(format!(
            "complement of Phi and so(8).Phi in the self-dual forms has rank {}, expected 27",
            rest.len()
        )));
    }
    Ok(TypeSplit {
        dim: 8,
        degree: 4,
        form: phi.clone(),
        blocks: vec![
            Block::new("1", &fb, vec![phi_c]),
            Block::new("7", &fb, seven),
            Block::new("27", &fb, rest),
            Block::new("35", &fb, anti),
        ],
    })
}

/// Refines the 2-form split of Phi = 1/2 w^2 + Re theta under SU(4).
///
/// Blocks, in order: "1" = span w, "6" = the eigenspace of a -> *(a ^ Re theta)
/// lying in the 7-block, "15" = the rest of the 21-block and "6'" = the
/// other eigenspace, lying in the 21-block.
pub fn su4_two_form_refinement(
    omega: &Multivector,
    re_theta: &Multivector,
) -> Result<TypeSplit, Spin7Error> {
    if omega.dim() != 8 || omega.degree() != 2 {
        return Err(FormError::WrongShape { dim: 8, degree: 2 }.into());
    }
    check_cayley_shape(re_theta)?;
    let w2 = omega.wedge(omega)?;
    let phi = &w2.scale(&crate::qf(1, 2)) + re_theta;
    let base = two_form_split(&phi)?;
    let fb = FormBasis::new(8, 2);
    let op = operator_matrix(&fb, &fb, |a| a.wedge(re_theta).expect("dim 8").hodge_star());
    let plus = eigenspace(&op, &q(2));
    let minus = eigenspace(&op, &q(-2));
    if (plus.len(), minus.len()) != (6, 6) {
        return Err(Spin7Error::NotAdmissible(format!(
            "*(. ^ Re theta) has eigenspace ranks {} (eigenvalue 2) and {} (eigenvalue -2), expected 6 and 6",
            plus.len(),
            minus.len()
        )));
    }
    let b7 = base.block("7").expect("7-block");
    let b21 = base.block("21").expect("21-block");
    let seven_coords = b7.coords();
    let in_seven = |vs: &Vec<Vector>| vs.iter().all(|v| linalg::in_span(&seven_coords, v));
    let (six, six_other) = if in_seven(&plus) {
        (plus, minus)
    } else if in_seven(&minus) {
        (minus, plus)
    } else {
        return Err(Spin7Error::NotAdmissible(
            "neither 2-eigenspace of *(. ^ Re theta) lies in the 7-block".into(),
        ));
    };
    let omega_c = omega.coords(&fb);
    if !linalg::in_span(&seven_coords, &omega_c) {
        return Err(Spin7Error::NotAdmissible("omega does not lie in the 7-block".into()));
    }
    // inside the 21-block, orthogonal to the rank-6 piece
    let mut conditions: Vec<Vector> = linalg::orthogonal_complement(&b21.coords(), fb.len());
    conditions.extend(six_other.iter().cloned());
    let fifteen = linalg::kernel(&conditions, fb.len());
    Ok(TypeSplit {
        dim: 8,
        degree: 2,
        form: phi,
        blocks: vec![
            Block::new("1", &fb, vec![omega_c]),
            Block::new("6", &fb, six),
            Block::new("15", &fb, fifteen),
            Block::new("6'", &fb, six_other),
        ],
    })
}

/// The cylindrical 2-form types of dt ^ phi + *phi built from a G2 3-form.
#[derive(Debug, Clone)]
pub struct CylinderTypes {
    /// Blocks "7" = {dt ^ *(*phi ^ v-|phi) + 3 v-|phi} and
    /// "21" = {dt ^ *(*phi ^ a) - a}.
    pub split: TypeSplit,
    /// Both blocks coincide with the eigenspaces of the 4-form.
    pub matches_eigenspaces: bool,
    /// |*(*phi ^ v-|phi)|^2 / |v-|phi|^2, the same for every v.
    pub iso7_scale_sq: Q,
}

pub fn cylinder_two_form_types(phi: &Multivector) -> Result<CylinderTypes, Spin7Error> {
    if phi.dim() != 7 || phi.degree() != 3 {
        return Err(FormError::WrongShape { dim: 7, degree: 3 }.into());
    }
    let psi = phi.hodge_star();
    let dt = Multivector::dx(8, &[1]);
    let lift = |a: &Multivector| -> Result<Multivector, FormError> {
        let one = psi.wedge(a)?.hodge_star();
        dt.wedge(&one.embed(8, 1))
    };
    let fb8 = FormBasis::new(8, 2);

    let mut sources = Vec::new();
    let mut images = Vec::new();
    let mut seven = Vec::new();
    for i in 1..=7 {
        let vphi = phi.contract_basis(i)?;
        let image = psi.wedge(&vphi)?.hodge_star();
        seven.push((&lift(&vphi)? + &vphi.embed(8, 1).scale(&q(3))).coords(&fb8));
        sources.push(vphi);
        images.push(image);
    }
    let fb7 = FormBasis::new(7, 2);
    let mut twenty_one = Vec::new();
    for j in 0..fb7.len() {
        let a = fb7.element(j);
        twenty_one.push((&lift(&a)? - &a.embed(8, 1)).coords(&fb8));
    }

    // Gram matrices of sources and images must be proportional.
    let mut scale: Option<Q> = None;
    let mut isometric = true;
    for (i, (si, ii)) in sources.iter().zip(&images).enumerate() {
        for (sj, ij) in sources.iter().zip(&images).skip(i) {
            let gs = si.inner(sj)?;
            let gi = ii.inner(ij)?;
            if gs.is_zero() {
                isometric &= gi.is_zero();
                continue;
            }
            let r = gi / gs;
            match &scale {
                None => scale = Some(r),
                Some(s) => isometric &= *s == r,
            }
        }
    }
    if !isometric {
        return Err(Spin7Error::NotAdmissible(
            "v -| phi -> *(*phi ^ v -| phi) is not conformal".into(),
        ));
    }

    let cyl = crate::exterior::cylinder_form(phi)?;
    let eigen = two_form_split(&cyl)?;
    let matches = linalg::same_span(&seven, &eigen.block("7").expect("7").coords())
        && linalg::same_span(&twenty_one, &eigen.block("21").expect("21").coords());
    let seven = linalg::span_basis(&seven);
    let twenty_one = linalg::span_basis(&twenty_one);
    Ok(CylinderTypes {
        split: TypeSplit {
            dim: 8,
            degree: 2,
            form: cyl,
            blocks: vec![
                Block::new("7", &fb8, seven),
                Block::new("21", &fb8, twenty_one),
            ],
        },
        matches_eigenspaces: matches,
        iso7_scale_sq: scale.unwrap_or_else(Q::zero),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{cayley_form, g2_form, su4_forms};
    use crate::spin7::stabilizer::linear_action;

    fn is_projector(p: &Matrix) -> bool {
        linalg::mat_mul(p, p) == *p && linalg::transpose(p) == *p
    }

    #[test]
    fn two_forms() {
        let phi = cayley_form();
        let s = two_form_split(&phi).unwrap();
        assert_eq!(s.ranks(), vec![7, 21]);
        assert!(s.is_orthogonal_decomposition());
        for b in &s.block("7").unwrap().basis {
            assert_eq!(phi.wedge(b).unwrap().hodge_star(), b.scale(&q(3)));
        }
        for b in &s.block("21").unwrap().basis {
            assert_eq!(phi.wedge(b).unwrap().hodge_star(), b.scale(&q(-1)));
        }
        let p7 = s.block("7").unwrap().projector();
        let p21 = s.block("21").unwrap().projector();
        assert!(is_projector(&p7) && is_projector(&p21));
        let sum: Matrix = p7
            .iter()
            .zip(&p21)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        assert_eq!(sum, linalg::identity(28));
    }

    #[test]
    fn omega_in_seven() {
        let su4 = su4_forms();
        let phi = cayley_form();
        assert_eq!(phi.wedge(&su4.omega).unwrap().hodge_star(), su4.omega.scale(&q(3)));
    }

    #[test]
    fn three_and_four_forms() {
        let phi = cayley_form();
        let s3 = three_form_split(&phi).unwrap();
        assert_eq!(s3.ranks(), vec![8, 48]);
        assert!(s3.is_orthogonal_decomposition());
        assert!(s3.block("8").unwrap().contains(&phi.contract_basis(3).unwrap()));

        let s4 = four_form_split(&phi).unwrap();
        assert_eq!(s4.ranks(), vec![1, 7, 27, 35]);
        assert!(s4.is_orthogonal_decomposition());
        for b in &s4.block("35").unwrap().basis {
            assert_eq!(b.hodge_star(), -b);
        }
        assert!(s4.block("1").unwrap().contains(&phi));
    }

    #[test]
    fn non_admissible_forms_are_rejected() {
        let flipped = &cayley_form() - &Multivector::dx(8, &[1, 2, 3, 4]).scale(&q(2));
        assert!(matches!(two_form_split(&flipped), Err(Spin7Error::NotAdmissible(_))));
        assert!(matches!(
            four_form_split(&Multivector::dx(8, &[1, 2, 3, 4])),
            Err(Spin7Error::NotAdmissible(_))
        ));
        assert!(two_form_split(&g2_form()).is_err());
    }

    #[test]
    fn splits_are_equivariant_under_so8() {
        // a signed permutation in SO(8) carries the split of Phi0 to the split
        // of its image
        let mut g = vec![vec![Q::zero(); 8]; 8];
        let perm = [1, 0, 2, 3, 4, 5, 6, 7];
        for (j, &i) in perm.iter().enumerate() {
            g[i][j] = Q::one();
        }
        g[0][1] = -Q::one();
        let phi = linear_action(&g, &cayley_form());
        let s = two_form_split(&phi).unwrap();
        let s0 = two_form_split(&cayley_form()).unwrap();
        for b in &s0.block("7").unwrap().basis {
            assert!(s.block("7").unwrap().contains(&linear_action(&g, b)));
        }
    }

    #[test]
    fn su4_refinement() {
        let su4 = su4_forms();
        let s = su4_two_form_refinement(&su4.omega, &su4.re_theta).unwrap();
        assert_eq!(s.ranks(), vec![1, 6, 15, 6]);
        assert!(s.is_orthogonal_decomposition());
        assert_eq!(s.form, cayley_form());

        // (2,0)+(0,2) forms are anti-invariant under a(J., J.)
        let mut jt = vec![vec![Q::zero(); 8]; 8];
        for k in 0..4 {
            jt[2 * k + 1][2 * k] = -Q::one();
            jt[2 * k][2 * k + 1] = Q::one();
        }
        for label in ["6", "6'"] {
            for b in &s.block(label).unwrap().basis {
                assert_eq!(linear_action(&jt, b), -b);
            }
        }
        for b in &s.block("15").unwrap().basis {
            assert_eq!(linear_action(&jt, b), *b);
        }
        let re_dz12 = &Multivector::dx(8, &[1, 3]) - &Multivector::dx(8, &[2, 4]);
        let p = &s.block("6").unwrap().project(&re_dz12) + &s.block("6'").unwrap().project(&re_dz12);
        assert_eq!(p, re_dz12);
    }

    #[test]
    fn cylinder_types() {
        let c = cylinder_two_form_types(&g2_form()).unwrap();
        assert_eq!(c.split.ranks(), vec![7, 21]);
        assert!(c.matches_eigenspaces);
        assert_eq!(c.iso7_scale_sq, q(3));
        assert!(c.split.is_orthogonal_decomposition());
    }
}
