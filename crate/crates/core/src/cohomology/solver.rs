use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};

use super::piece::{enumerate_piece, piece_size_bound};
use crate::error::Error;
use crate::operators::DworkData;
use crate::superalgebra::{Scalar, SuperElement, SuperMonomial};

/// Largest graded piece a solver will enumerate.
pub const MAX_PIECE_SIZE: u128 = 2_000_000;

/// Sparse vector: strictly increasing indices, nonzero values.
pub(crate) type SparseVec = Vec<(usize, Scalar)>;

/// An echelon row of the `Q_G` image with its preimage.
///
/// `row[0]` sits at the pivot column with value 1; later entries are at
/// larger column indices.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct PivotRow {
    pub row: SparseVec,
    pub preimage: SparseVec,
}

/// Echelonized image of `Q_G` from the odd-count-1 piece into the even piece
/// of charge `c_G` at one weight.
///
/// Columns are the even monomials in decreasing canonical order, so pivoting
/// on the smallest column index pivots on the largest monomial.
#[derive(Clone, Debug)]
pub struct WeightSolver {
    weight: u32,
    columns: Vec<SuperMonomial>,
    column_index: HashMap<SuperMonomial, usize>,
    sources: Vec<SuperMonomial>,
    source_index: HashMap<SuperMonomial, usize>,
    pivots: BTreeMap<usize, PivotRow>,
    complement: Vec<usize>,
}

/// Output of [`WeightSolver::solve`]: `target = complement part + Q_G(preimage)`.
#[derive(Clone, Debug)]
pub struct WeightSolution {
    pub complement: Vec<(SuperMonomial, Scalar)>,
    pub preimage: SuperElement,
}

/// `acc -= c * row`, both sparse.
fn sub_scaled(acc: &mut BTreeMap<usize, Scalar>, c: &Scalar, row: &[(usize, Scalar)]) {
    use std::collections::btree_map::Entry;
    for (j, v) in row {
        let delta = c * v;
        match acc.entry(*j) {
            Entry::Vacant(e) => {
                e.insert(-delta);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() -= delta;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

impl WeightSolver {
    fn frame(d: &DworkData, weight: u32) -> Result<Self, Error> {
        let ctx = d.context();
        let c_g = ctx.background_charge();
        let bound = piece_size_bound(ctx, c_g, weight, 0).saturating_add(piece_size_bound(ctx, c_g, weight, 1));
        if bound > MAX_PIECE_SIZE {
            return Err(Error::InvalidInput(format!(
                "graded pieces at weight {weight} are too large to enumerate"
            )));
        }
        let mut columns = enumerate_piece(ctx, c_g, weight, 0).monomials;
        columns.reverse();
        let sources = enumerate_piece(ctx, c_g, weight, 1).monomials;
        let column_index = columns.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let source_index = sources.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Ok(Self {
            weight,
            columns,
            column_index,
            sources,
            source_index,
            pivots: BTreeMap::new(),
            complement: Vec::new(),
        })
    }

    /// Coordinates of an element of the even piece.
    fn coordinates(&self, a: &SuperElement) -> Result<BTreeMap<usize, Scalar>, Error> {
        a.terms()
            .map(|(m, c)| {
                self.column_index
                    .get(m)
                    .map(|&j| (j, c.clone()))
                    .ok_or_else(|| Error::Internal(format!("monomial outside the weight-{} piece", self.weight)))
            })
            .collect()
    }

    fn image_row(&self, d: &DworkData, source: usize) -> Result<BTreeMap<usize, Scalar>, Error> {
        let a = SuperElement::from_monomial(d.context(), self.sources[source].clone(), Scalar::one());
        self.coordinates(&d.apply_q(&a))
    }

    /// Eliminates `row` against the current pivots. Returns the residual
    /// (empty when `row` lies in their span) and the accumulated preimage.
    fn eliminate(
        &self,
        mut row: BTreeMap<usize, Scalar>,
        mut preimage: BTreeMap<usize, Scalar>,
    ) -> (BTreeMap<usize, Scalar>, BTreeMap<usize, Scalar>) {
        while let Some((&lead, c)) = row.first_key_value() {
            let Some(p) = self.pivots.get(&lead) else { break };
            let c = c.clone();
            sub_scaled(&mut row, &c, &p.row);
            sub_scaled(&mut preimage, &c, &p.preimage);
        }
        (row, preimage)
    }

    pub(crate) fn build(d: &DworkData, weight: u32) -> Result<Self, Error> {
        let mut s = Self::frame(d, weight)?;
        let mut rows = Vec::with_capacity(s.sources.len());
        for i in 0..s.sources.len() {
            let row = s.image_row(d, i)?;
            if !row.is_empty() {
                rows.push((i, row));
            }
        }
        // sparse rows first, ties by source order
        rows.sort_by_key(|(i, r)| (r.len(), *i));
        for (i, row) in rows {
            let (row, preimage) = s.eliminate(row, BTreeMap::from([(i, Scalar::one())]));
            let Some((&lead, c)) = row.first_key_value() else {
                continue;
            };
            let inv = Scalar::one() / c;
            let scale = |v: BTreeMap<usize, Scalar>| v.into_iter().map(|(j, x)| (j, x * &inv)).collect();
            s.pivots.insert(
                lead,
                PivotRow {
                    row: scale(row),
                    preimage: scale(preimage),
                },
            );
        }
        s.complement = (0..s.columns.len()).filter(|j| !s.pivots.contains_key(j)).collect();
        Ok(s)
    }

    /// Rebuilds a solver from stored pivot data, checking that every pivot
    /// row is the `Q_G` image of its preimage and that the rows span the
    /// whole image.
    pub(crate) fn from_parts(
        d: &DworkData,
        weight: u32,
        pivots: Vec<(SuperMonomial, SuperElement, SuperElement)>,
        complement: Vec<SuperMonomial>,
    ) -> Result<Self, Error> {
        let bad = |msg: String| Error::Document(format!("weight {weight}: {msg}"));
        let mut s = Self::frame(d, weight)?;
        for (column, row, preimage) in pivots {
            let &lead = s
                .column_index
                .get(&column)
                .ok_or_else(|| bad("pivot column outside the piece".into()))?;
            if d.apply_q(&preimage) != row {
                return Err(bad("pivot row differs from the image of its preimage".into()));
            }
            let coords: SparseVec = s
                .coordinates(&row)
                .map_err(|e| bad(e.to_string()))?
                .into_iter()
                .collect();
            if coords.first() != Some(&(lead, Scalar::one())) {
                return Err(bad("pivot row does not lead with 1 at its column".into()));
            }
            let mut pre = SparseVec::new();
            for (m, c) in preimage.terms() {
                let &i = s
                    .source_index
                    .get(m)
                    .ok_or_else(|| bad("preimage outside the source piece".into()))?;
                pre.push((i, c.clone()));
            }
            pre.sort_by_key(|(i, _)| *i);
            if s.pivots
                .insert(
                    lead,
                    PivotRow {
                        row: coords,
                        preimage: pre,
                    },
                )
                .is_some()
            {
                return Err(bad("repeated pivot column".into()));
            }
        }
        let mut comp = Vec::with_capacity(complement.len());
        for m in complement {
            let &j = s
                .column_index
                .get(&m)
                .ok_or_else(|| bad("complement monomial outside the piece".into()))?;
            comp.push(j);
        }
        comp.sort_unstable();
        let expected: Vec<usize> = (0..s.columns.len()).filter(|j| !s.pivots.contains_key(j)).collect();
        if comp != expected {
            return Err(bad("complement does not match the pivot columns".into()));
        }
        s.complement = comp;
        for i in 0..s.sources.len() {
            let row = s.image_row(d, i)?;
            if !s.eliminate(row, BTreeMap::new()).0.is_empty() {
                return Err(bad("pivot rows do not span the image".into()));
            }
        }
        Ok(s)
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Even monomials of this weight, decreasing.
    pub fn columns(&self) -> &[SuperMonomial] {
        &self.columns
    }

    /// Odd-count-1 monomials of this weight, increasing.
    pub fn sources(&self) -> &[SuperMonomial] {
        &self.sources
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Complement monomials, decreasing.
    pub fn complement(&self) -> Vec<SuperMonomial> {
        self.complement.iter().map(|&j| self.columns[j].clone()).collect()
    }

    pub(crate) fn pivots(&self) -> impl Iterator<Item = (&SuperMonomial, &PivotRow)> {
        self.pivots.iter().map(|(&j, p)| (&self.columns[j], p))
    }

    pub(crate) fn row_element(&self, d: &DworkData, row: &SparseVec) -> SuperElement {
        SuperElement::from_terms(
            d.context(),
            row.iter().map(|(j, c)| (self.columns[*j].clone(), c.clone())),
        )
    }

    pub(crate) fn preimage_element(&self, d: &DworkData, pre: &SparseVec) -> SuperElement {
        SuperElement::from_terms(
            d.context(),
            pre.iter().map(|(i, c)| (self.sources[*i].clone(), c.clone())),
        )
    }

    /// Splits `target` (an element of this even piece) into complement
    /// monomials plus `Q_G(preimage)`.
    pub fn solve(&self, d: &DworkData, target: &SuperElement) -> Result<WeightSolution, Error> {
        let (residual, preimage) = self.eliminate_all(self.coordinates(target)?);
        Ok(WeightSolution {
            complement: residual
                .into_iter()
                .map(|(j, c)| (self.columns[j].clone(), c))
                .collect(),
            preimage: self.preimage_element(d, &preimage.into_iter().collect()),
        })
    }

    /// Like `eliminate`, but steps over non-pivot columns instead of stopping.
    fn eliminate_all(&self, mut row: BTreeMap<usize, Scalar>) -> (BTreeMap<usize, Scalar>, BTreeMap<usize, Scalar>) {
        let mut residual = BTreeMap::new();
        let mut preimage = BTreeMap::new();
        while let Some((lead, c)) = row.pop_first() {
            match self.pivots.get(&lead) {
                Some(p) => {
                    // the pivot row carries `c` at `lead`; the rest lands after it
                    sub_scaled(&mut row, &c, &p.row[1..]);
                    sub_scaled(&mut preimage, &-c, &p.preimage);
                }
                None => {
                    residual.insert(lead, c);
                }
            }
        }
        (residual, preimage)
    }
}
