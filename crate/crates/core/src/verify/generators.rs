//! The five generator configurations, their automorphism orbits per group,
//! and the claimed cyclic decompositions being verified.

use num_bigint::BigInt;
use std::fmt;
use std::str::FromStr;

use crate::chipfiring::{act, Configuration};
use crate::error::{Error, Result};
use crate::graph::{rook_automorphism, swap_permutation, RookCoords, VertexPermutation};
use crate::group::AbelianGroup;

use super::GroupKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorId {
    C1,
    C2,
    C3,
    C4,
    C5,
}

impl GeneratorId {
    pub const ALL: [GeneratorId; 5] = [
        GeneratorId::C1,
        GeneratorId::C2,
        GeneratorId::C3,
        GeneratorId::C4,
        GeneratorId::C5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorId::C1 => "c1",
            GeneratorId::C2 => "c2",
            GeneratorId::C3 => "c3",
            GeneratorId::C4 => "c4",
            GeneratorId::C5 => "c5",
        }
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GeneratorId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Parse {
                line: 1,
                message: format!("unknown generator id {s:?}"),
            })
    }
}

fn big(v: usize) -> BigInt {
    BigInt::from(v)
}

/// Build a grid configuration from (row, column, value) cells.
pub(crate) fn grid(n: usize, cells: &[(usize, usize, BigInt)]) -> Result<Configuration> {
    let rc = RookCoords::new(n)?;
    let mut c = Configuration::zero(rc.vertex_count());
    for (i, j, v) in cells {
        c.set_label(rc.index(*i, *j)?, v.clone());
    }
    Ok(c)
}

/// The five base generators on the n x n grid.
///
/// c1: -1 at (1,1), +1 at (1,2)
/// c2: -(n-1) at (1,1), +1 across the rest of row 1
/// c3: the alternating square -1,+1 / +1,-1 on the top-left 2x2 block
/// c4: +1 at (1,1)
/// c5: -n(n-1)(n-2) at (1,1), n(n-2) down the rest of column 1
pub fn make_generator(id: GeneratorId, n: usize) -> Result<Configuration> {
    let one = BigInt::from(1);
    let neg = |v: BigInt| -v;
    let mut cells: Vec<(usize, usize, BigInt)> = Vec::new();
    match id {
        GeneratorId::C1 => {
            cells.push((1, 1, neg(one.clone())));
            cells.push((1, 2, one));
        }
        GeneratorId::C2 => {
            cells.push((1, 1, neg(big(n - 1))));
            for j in 2..=n {
                cells.push((1, j, one.clone()));
            }
        }
        GeneratorId::C3 => {
            cells.push((1, 1, neg(one.clone())));
            cells.push((1, 2, one.clone()));
            cells.push((2, 1, one));
            cells.push((2, 2, neg(BigInt::from(1))));
        }
        GeneratorId::C4 => {
            cells.push((1, 1, one));
        }
        GeneratorId::C5 => {
            cells.push((1, 1, neg(big(n) * big(n - 1) * big(n - 2))));
            for i in 2..=n {
                cells.push((i, 1, big(n) * big(n - 2)));
            }
        }
    }
    grid(n, &cells)
}

/// q_{i,j}: -1 at (1,1), +1 at (i,j). The q's with label sum zero span the
/// whole critical group, which is what the spanning certificates exploit.
pub fn make_q(i: usize, j: usize, n: usize) -> Result<Configuration> {
    if (i, j) == (1, 1) {
        return Err(Error::BadGridCoordinate { i, j, n });
    }
    grid(
        n,
        &[(1, 1, BigInt::from(-1)), (i, j, BigInt::from(1))],
    )
}

/// One generator of a claimed generating multiset: the automorphism image
/// of a base generator, with its claimed cyclic order.
#[derive(Clone, Debug)]
pub struct OrbitGenerator {
    pub id: GeneratorId,
    pub label: String,
    pub sigma: VertexPermutation,
    pub config: Configuration,
    pub claimed_order: BigInt,
}

fn orbit_entry(
    id: GeneratorId,
    label: String,
    sigma: VertexPermutation,
    n: usize,
    claimed_order: BigInt,
) -> Result<OrbitGenerator> {
    let config = act(&sigma, &make_generator(id, n)?)?;
    Ok(OrbitGenerator {
        id,
        label,
        sigma,
        config,
        claimed_order,
    })
}

/// Images of c3 with the inner -1 at (i, j), for all cells of the inner
/// (n-2) x (n-2) block: row and column swaps fixing the borders.
fn c3_images(n: usize, order: &BigInt, out: &mut Vec<OrbitGenerator>) -> Result<()> {
    let id_perm = swap_permutation(n, 1, 1);
    for i in 2..=n - 1 {
        for j in 2..=n - 1 {
            let sigma = rook_automorphism(n, &swap_permutation(n, 2, i), &swap_permutation(n, 2, j), false)?;
            debug_assert!({
                let _ = &id_perm;
                true
            });
            out.push(orbit_entry(
                GeneratorId::C3,
                format!("c3@({i},{j})"),
                sigma,
                n,
                order.clone(),
            )?);
        }
    }
    Ok(())
}

/// Images of c1 with the +1 at (1, j) for j in `row_cols`, and at (i, 1)
/// for i in `col_rows` (via the diagonal reflection).
fn c1_images(
    n: usize,
    row_cols: impl Iterator<Item = usize>,
    col_rows: impl Iterator<Item = usize>,
    order: &BigInt,
    out: &mut Vec<OrbitGenerator>,
) -> Result<()> {
    let id_perm = swap_permutation(n, 1, 1);
    for j in row_cols {
        let sigma = rook_automorphism(n, &id_perm, &swap_permutation(n, 2, j), false)?;
        out.push(orbit_entry(
            GeneratorId::C1,
            format!("c1@(1,{j})"),
            sigma,
            n,
            order.clone(),
        )?);
    }
    for i in col_rows {
        let sigma = rook_automorphism(n, &swap_permutation(n, 2, i), &id_perm, true)?;
        out.push(orbit_entry(
            GeneratorId::C1,
            format!("c1@({i},1)"),
            sigma,
            n,
            order.clone(),
        )?);
    }
    Ok(())
}

fn single(id: GeneratorId, n: usize, order: BigInt, out: &mut Vec<OrbitGenerator>) -> Result<()> {
    out.push(orbit_entry(
        id,
        id.name().to_string(),
        VertexPermutation::identity(n * n),
        n,
        order,
    )?);
    Ok(())
}

/// The full claimed generating multiset for one group.
pub fn generator_orbit(kind: GroupKind, n: usize) -> Result<Vec<OrbitGenerator>> {
    if n < 3 {
        return Err(Error::RookSizeTooSmall(n));
    }
    let mut out = Vec::new();
    match kind {
        GroupKind::KR => {
            c3_images(n, &(big(2) * big(n)), &mut out)?;
            c1_images(n, 2..=n - 1, 2..=n - 1, &(big(2) * big(n) * big(n)), &mut out)?;
            single(GeneratorId::C2, n, big(2) * big(n), &mut out)?;
        }
        GroupKind::SR => {
            c3_images(n, &big(2), &mut out)?;
            // the +1 may also take the last spot of the top row here
            c1_images(n, 2..=n, 2..=n - 1, &(big(2) * big(n - 2)), &mut out)?;
            single(GeneratorId::C4, n, big(2) * big(n - 1) * big(n - 2), &mut out)?;
        }
        GroupKind::KRc => {
            c3_images(n, &(big(n) * big(n - 2)), &mut out)?;
            c1_images(
                n,
                2..=n - 1,
                2..=n - 1,
                &(big(n) * big(n) * big(n - 1) * big(n - 2)),
                &mut out,
            )?;
            single(GeneratorId::C2, n, big(n) * big(n - 1) * big(n - 2), &mut out)?;
            single(GeneratorId::C5, n, big(n - 1), &mut out)?;
        }
        GroupKind::SRc => {
            c1_images(n, 2..=n, 2..=n, &big(n - 1), &mut out)?;
            single(GeneratorId::C4, n, big(n - 1) * big(n - 1), &mut out)?;
        }
    }
    Ok(out)
}

/// A claimed decomposition: cyclic orders with multiplicities, as functions
/// of n, for each of the four groups.
#[derive(Clone, Debug)]
pub struct ClaimedDecomposition {
    pub kind: GroupKind,
    pub n: usize,
    parts: Vec<(BigInt, usize)>,
}

pub fn claimed_decomposition(kind: GroupKind, n: usize) -> Result<ClaimedDecomposition> {
    if n < 3 {
        return Err(Error::RookSizeTooSmall(n));
    }
    let parts = match kind {
        GroupKind::KR => vec![
            (big(2) * big(n), (n - 2) * (n - 2) + 1),
            (big(2) * big(n) * big(n), 2 * (n - 2)),
        ],
        GroupKind::SR => vec![
            (big(2), (n - 2) * (n - 2)),
            (big(2) * big(n - 2), 2 * n - 3),
            (big(2) * big(n - 1) * big(n - 2), 1),
        ],
        GroupKind::KRc => vec![
            (big(n) * big(n - 2), (n - 2) * (n - 2) - 1),
            (big(n) * big(n - 1) * big(n - 2), 2),
            (big(n) * big(n) * big(n - 1) * big(n - 2), 2 * (n - 2)),
        ],
        GroupKind::SRc => vec![
            (big(n - 1), 2 * (n - 1)),
            (big(n - 1) * big(n - 1), 1),
        ],
    };
    Ok(ClaimedDecomposition { kind, n, parts })
}

impl ClaimedDecomposition {
    pub fn parts(&self) -> &[(BigInt, usize)] {
        &self.parts
    }

    pub fn cyclic_orders(&self) -> Vec<BigInt> {
        let mut out = Vec::new();
        for (order, mult) in &self.parts {
            out.extend(std::iter::repeat_with(|| order.clone()).take(*mult));
        }
        out
    }

    pub fn order(&self) -> BigInt {
        self.parts
            .iter()
            .map(|(order, mult)| order.pow(*mult as u32))
            .product()
    }

    /// Canonical invariant-factor form of the claim.
    pub fn group(&self) -> AbelianGroup {
        AbelianGroup::canonicalize(&self.cyclic_orders(), 0)
            .expect("claimed orders are positive")
    }
}
