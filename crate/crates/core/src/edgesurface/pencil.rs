use crate::curve::QuadricPencilSpec;
use crate::error::{Error, Result};
use crate::polyring::{resultant_univariate, Polynomial, Ring};

/// Edge surface of the intersection curve of a pencil of quadrics: the
/// product of its four singular members, as `res_t(det(Q1 + tQ2), (Q1 + tQ2)(x,y,z))`.
pub fn pencil_edge_surface(pencil: &QuadricPencilSpec) -> Result<Polynomial> {
    let f = pencil.characteristic();
    let deg = f.total_degree();
    if deg < 4 {
        return Err(Error::DegeneratePencil(deg as usize));
    }
    let ring = Ring::grevlex(&["t", "x", "y", "z"]);
    let t = Polynomial::var(&ring, "t");
    let q1 = QuadricPencilSpec::quadric(pencil.q1(), &ring)?;
    let q2 = QuadricPencilSpec::quadric(pencil.q2(), &ring)?;
    let member = &q1 + &(&t * &q2);
    let res = resultant_univariate(&f.to_ring(&ring)?, &member, "t")?;
    res.to_ring(&super::space_ring()).map(|p| p.canonical())
}
