//! Order-reflecting map from atoms into hereditary sets over the base order
//! extended by a fresh incomparable marker.

use serde::Serialize;

use crate::error::Result;
use crate::hierarchy::{lesssim_star, AtomKind, HSet, SymbolicLevel};
use crate::qo::FiniteQO;
use crate::report::{Check, Report};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Image {
    Set(HSet),
    /// Undefined; must never be produced for finite bases.
    Bottom,
}

#[derive(Debug, Clone)]
pub struct ReflectionTable {
    pub alpha: usize,
    /// Base order with the marker appended as its last element.
    pub target: FiniteQO,
    pub marker: usize,
    pub entries: Vec<Image>,
}

impl ReflectionTable {
    pub fn image(&self, atom: usize) -> Option<&HSet> {
        match &self.entries[atom] {
            Image::Set(x) => Some(x),
            Image::Bottom => None,
        }
    }

    pub fn show(&self, atom: usize) -> String {
        match &self.entries[atom] {
            Image::Set(x) => x.show(&self.target),
            Image::Bottom => "⊥".into(),
        }
    }
}

/// Classes of the base go to their urelement. A star goes to the set of
/// its generators' images together with the marker. Any undefined
/// generator image makes the star's image undefined.
pub fn build_reflection(sym: &SymbolicLevel) -> Result<ReflectionTable> {
    let target = sym.base.disjoint_union_with_star();
    let marker = sym.base.len();
    let mut entries: Vec<Image> = Vec::with_capacity(sym.len());
    for atom in &sym.atoms {
        let img = match &atom.kind {
            AtomKind::NonIdem(p) => Image::Set(HSet::Ur(*p)),
            AtomKind::Idem(d) => {
                let parts: Option<Vec<HSet>> = d
                    .iter()
                    .map(|&i| match &entries[i] {
                        Image::Set(x) => Some(x.clone()),
                        Image::Bottom => None,
                    })
                    .collect();
                match parts {
                    Some(mut parts) => {
                        parts.push(HSet::Ur(marker));
                        Image::Set(HSet::set(parts)?)
                    }
                    None => Image::Bottom,
                }
            }
        };
        entries.push(img);
    }
    Ok(ReflectionTable { alpha: sym.alpha, target, marker, entries })
}

/// For every atom pair, the atom order agrees with the order of the images
/// in both directions. Also checks that the marker separates stars from
/// classes and that image ranks stay below the level.
pub fn verify_reflection(sym: &SymbolicLevel, table: &ReflectionTable) -> Report {
    let order = sym.alphabet.order();
    let n = sym.len();
    let mut defined = Check::new("no_bottom");
    let mut preserving = Check::new("order_preserving");
    let mut reflecting = Check::new("order_reflecting");
    let mut marker = Check::new("marker_exactly_on_stars");
    let mut rank = Check::new("rank_below_level");
    for i in 0..n {
        defined.record(table.image(i).is_some(), || vec![sym.label(i).to_string()]);
        if let Some(x) = table.image(i) {
            let has_marker = x.children().contains(&HSet::Ur(table.marker));
            marker.record(has_marker == sym.atoms[i].is_idem(), || {
                vec![sym.label(i).to_string(), table.show(i)]
            });
            rank.record(x.rank() < table.alpha as i64, || vec![sym.label(i).to_string(), table.show(i)]);
        }
    }
    for i in 0..n {
        for j in 0..n {
            let (Some(x), Some(y)) = (table.image(i), table.image(j)) else { continue };
            let atoms = order.leq(i, j);
            let images = lesssim_star(x, y, &table.target);
            let witness = || {
                vec![sym.label(i).to_string(), sym.label(j).to_string(), table.show(i), table.show(j)]
            };
            if atoms {
                preserving.record(images, witness);
            } else {
                reflecting.record(!images, witness);
            }
        }
    }
    Report { subject: "reflection".into(), checks: vec![defined, preserving, reflecting, marker, rank] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::hierarchy::LevelLimits;

    fn sym(q: &FiniteQO, alpha: usize) -> SymbolicLevel {
        SymbolicLevel::build(q, alpha, &LevelLimits::default()).unwrap()
    }

    #[test]
    fn a2_images() {
        let s = sym(&fixtures::a2(), 1);
        let t = build_reflection(&s).unwrap();
        let shown: Vec<String> = (0..s.len()).map(|i| t.show(i)).collect();
        assert_eq!(shown, vec!["a", "b", "{a,⋆}", "{a,b,⋆}", "{b,⋆}"]);
        let r = verify_reflection(&s, &t);
        assert!(r.passed(), "{r:?}");
        let pairs = r.check("order_preserving").unwrap().checked
            + r.check("order_reflecting").unwrap().checked;
        assert_eq!(pairs, 25);
    }

    #[test]
    fn level_zero_is_identity() {
        let s = sym(&fixtures::a2(), 0);
        let t = build_reflection(&s).unwrap();
        assert_eq!(t.image(0), Some(&HSet::Ur(0)));
        assert!(verify_reflection(&s, &t).passed());
    }

    #[test]
    fn singleton_level_two() {
        let s = sym(&FiniteQO::antichain(1), 2);
        let t = build_reflection(&s).unwrap();
        assert!(verify_reflection(&s, &t).passed());
    }
}
