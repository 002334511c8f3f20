use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::exactmath::{FieldTower, FqElem, Rat, ValOrInf};
use crate::series::PuiseuxSeries;

/// Lazy monotone term generator for a (possibly infinite) series.
///
/// Terms come out in strictly increasing exponent order. Each consumer owns
/// its stream; generators must be pure functions of their defining indices,
/// so fresh instances of the same stream replay identically.
///
/// The stream accumulates what it has pulled, which makes truncations at
/// increasing bounds nested prefixes of one another.
pub struct SeriesStream {
    gen: Box<dyn FnMut() -> Option<(Rat, FqElem)>>,
    peeked: Option<Option<(Rat, FqElem)>>,
    collected: Vec<(Rat, FqElem)>,
}

impl SeriesStream {
    pub fn from_fn(gen: impl FnMut() -> Option<(Rat, FqElem)> + 'static) -> SeriesStream {
        SeriesStream { gen: Box::new(gen), peeked: None, collected: Vec::new() }
    }

    /// Stream over a finite, exact series.
    pub fn from_series(s: &PuiseuxSeries) -> SeriesStream {
        let terms: Vec<_> = s.terms().to_vec();
        let mut idx = 0;
        SeriesStream::from_fn(move || {
            let t = terms.get(idx).cloned();
            idx += 1;
            t
        })
    }

    fn fill_peek(&mut self) {
        if self.peeked.is_none() {
            let term = (self.gen)();
            if let (Some((e, _)), Some((last, _))) = (&term, self.collected.last()) {
                assert!(e > last, "stream exponents must strictly increase");
            }
            self.peeked = Some(term);
        }
    }

    /// Exponent of the next term; `Infinity` when the stream is exhausted.
    pub fn next_exponent(&mut self) -> ValOrInf {
        self.fill_peek();
        match self.peeked.as_ref().unwrap() {
            Some((e, _)) => ValOrInf::Finite(e.clone()),
            None => ValOrInf::Infinity,
        }
    }

    pub fn next_term(&mut self) -> Option<(Rat, FqElem)> {
        self.fill_peek();
        let t = self.peeked.take().unwrap();
        if let Some(term) = &t {
            self.collected.push(term.clone());
        }
        t
    }

    /// All terms with exponent `< r` (bounded by `max_terms` pulls in total),
    /// together with the exact exponent of the first omitted term.
    ///
    /// The returned series carries that next exponent as its precision, which
    /// is exact: nothing below it has been dropped. Exhaustion yields
    /// precision `∞`, so a fully drained stream is an exact object.
    pub fn truncate_below(
        &mut self,
        r: &Rat,
        max_terms: usize,
        tw: &FieldTower,
    ) -> (PuiseuxSeries, ValOrInf) {
        loop {
            if self.collected.len() >= max_terms {
                break;
            }
            match self.next_exponent() {
                ValOrInf::Finite(e) if &e < r => {
                    self.next_term();
                }
                _ => break,
            }
        }
        let next = self.next_exponent();
        let series = PuiseuxSeries::from_terms(self.collected.clone(), next.clone(), tw);
        (series, next)
    }
}
