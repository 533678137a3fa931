//! Sparse row-echelon engine over word-indexed vectors.
//!
//! Rows are sparse maps `Word -> Scalar`. Insertion keeps a forward echelon
//! basis (fresh pivot per row, pivot coefficient 1); full mutual reduction
//! is deferred to [`RowSpace::finalize`], which runs once in pivot order.
//! Residues from [`RowSpace::reduce`] are canonical either way: they are
//! supported on non-pivot words only.
//!
//! Two pivot conventions are needed:
//!
//! * [`PivotRule::DeglexMin`] picks the deglex-smallest word. Used for
//!   homogeneous subspaces; the surviving (non-pivot) words are the normal
//!   words of a graded slice.
//! * [`PivotRule::FilteredTop`] picks, among the words of maximal length,
//!   the lex-smallest. Used for filtered quotients, where a row must rewrite
//!   its top-degree part into lower filtration levels; within one degree it
//!   agrees with `DeglexMin`, so normal words line up across the two rules.

use std::collections::BTreeMap;

use crate::scalar::Scalar;
use crate::word::Word;

pub type SparseRow = BTreeMap<Word, Scalar>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotRule {
    DeglexMin,
    FilteredTop,
}

impl PivotRule {
    /// The word this rule eliminates first. Every other word of the row is
    /// "later" in the rule's elimination order.
    fn pivot(self, row: &SparseRow) -> Option<Word> {
        match self {
            PivotRule::DeglexMin => row.keys().next().cloned(),
            PivotRule::FilteredTop => {
                let max_len = row.keys().next_back()?.len();
                let floor = Word(vec![0; max_len]);
                row.range(floor..).next().map(|(w, _)| w.clone())
            }
        }
    }

    /// Iterate pivot words from last-eliminated to first-eliminated.
    fn ascending(self, pivots: &BTreeMap<Word, usize>) -> Vec<Word> {
        match self {
            PivotRule::DeglexMin => pivots.keys().rev().cloned().collect(),
            PivotRule::FilteredTop => {
                let mut words: Vec<Word> = pivots.keys().cloned().collect();
                words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.0.cmp(&a.0)));
                words
            }
        }
    }

    /// Among the pivot hits of `row`, the one to eliminate next.
    fn best_hit(self, row: &SparseRow, pivots: &BTreeMap<Word, usize>) -> Option<Word> {
        match self {
            PivotRule::DeglexMin => row.keys().find(|w| pivots.contains_key(*w)).cloned(),
            PivotRule::FilteredTop => {
                let mut best: Option<&Word> = None;
                for w in row.keys() {
                    if !pivots.contains_key(w) {
                        continue;
                    }
                    best = Some(match best {
                        None => w,
                        Some(b) => {
                            if w.len() > b.len() || (w.len() == b.len() && w.0 < b.0) {
                                w
                            } else {
                                b
                            }
                        }
                    });
                }
                best.cloned()
            }
        }
    }
}

pub fn row_add_scaled(target: &mut SparseRow, source: &SparseRow, factor: &Scalar) {
    if factor.is_zero() {
        return;
    }
    for (w, c) in source {
        let entry = target.entry(w.clone()).or_insert_with(Scalar::zero);
        *entry += &(c * factor);
        if entry.is_zero() {
            target.remove(w);
        }
    }
}

#[derive(Debug, Clone)]
pub struct RowSpace {
    rule: PivotRule,
    rows: Vec<SparseRow>,
    pivots: BTreeMap<Word, usize>,
    reduced: bool,
}

impl RowSpace {
    pub fn new(rule: PivotRule) -> Self {
        RowSpace {
            rule,
            rows: Vec::new(),
            pivots: BTreeMap::new(),
            reduced: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_words(&self) -> impl Iterator<Item = &Word> {
        self.pivots.keys()
    }

    pub fn is_pivot(&self, w: &Word) -> bool {
        self.pivots.contains_key(w)
    }

    /// Fully reduce `row`: the canonical residue, supported on non-pivot
    /// words only. Each elimination step introduces only words that the
    /// rule eliminates later, so the loop terminates.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        while let Some(hit) = self.rule.best_hit(&row, &self.pivots) {
            let c = row[&hit].clone();
            let idx = self.pivots[&hit];
            row_add_scaled(&mut row, &self.rows[idx], &-c);
            debug_assert!(!row.contains_key(&hit));
        }
        row
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Insert one row; returns true when the dimension grew. Only the
    /// leading word is chased, so insertion never touches earlier rows.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        loop {
            let Some(pivot) = self.rule.pivot(&row) else {
                return false;
            };
            match self.pivots.get(&pivot) {
                Some(&idx) => {
                    let c = row[&pivot].clone();
                    row_add_scaled(&mut row, &self.rows[idx], &-c);
                }
                None => {
                    let lead = row[&pivot].clone();
                    let inv = lead.inv().expect("pivot coefficient is nonzero");
                    for c in row.values_mut() {
                        *c *= &inv;
                    }
                    let idx = self.rows.len();
                    self.rows.push(row);
                    self.pivots.insert(pivot, idx);
                    self.reduced = false;
                    return true;
                }
            }
        }
    }

    pub fn extend<I: IntoIterator<Item = SparseRow>>(&mut self, rows: I) {
        for r in rows {
            self.insert(r);
        }
    }

    /// Back-substitute so that no row contains another row's pivot word.
    /// Rows are processed from last-eliminated pivot upward, so one pass
    /// suffices.
    pub fn finalize(&mut self) {
        if self.reduced {
            return;
        }
        for w in self.rule.ascending(&self.pivots) {
            let idx = self.pivots[&w];
            let mut row = std::mem::take(&mut self.rows[idx]);
            let mut hits: Vec<Word> = row
                .keys()
                .filter(|u| **u != w && self.pivots.contains_key(*u))
                .cloned()
                .collect();
            while let Some(hit) = hits.pop() {
                if let Some(c) = row.get(&hit).cloned() {
                    let other = &self.rows[self.pivots[&hit]];
                    row_add_scaled(&mut row, other, &-c);
                }
            }
            debug_assert!(row.keys().all(|u| *u == w || !self.pivots.contains_key(u)));
            self.rows[idx] = row;
        }
        self.reduced = true;
    }

    /// The reduced row with the given pivot word. Requires a finalized
    /// space.
    pub fn row_for_pivot(&self, w: &Word) -> Option<&SparseRow> {
        debug_assert!(self.reduced, "finalize before reading rows");
        self.pivots.get(w).map(|&i| &self.rows[i])
    }

    /// Basis rows sorted by pivot word; this is the canonical form of the
    /// span.
    pub fn into_sorted_rows(mut self) -> Vec<SparseRow> {
        self.finalize();
        let RowSpace { rows, pivots, .. } = self;
        let mut rows: Vec<Option<SparseRow>> = rows.into_iter().map(Some).collect();
        let mut out: Vec<(Word, SparseRow)> = pivots
            .into_iter()
            .map(|(w, i)| (w, rows[i].take().expect("pivot row present")))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out.into_iter().map(|(_, r)| r).collect()
    }
}
