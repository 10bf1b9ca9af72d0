use std::fmt;

use super::pi::{PiElement, PiGroup};
use crate::error::Result;
use crate::hdt::HomotopyDataTriple;
use crate::phrase::Nanophrase;

/// Symmetric matrix over the orbit group. Entry `(i, j)` for `i != j` is
/// the product of the symbols of letters shared by components `i` and `j`;
/// the diagonal is the identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinkingMatrix {
    group: PiGroup,
    entries: Vec<Vec<PiElement>>,
}

impl LinkingMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &PiElement {
        &self.entries[i][j]
    }

    pub fn group(&self) -> &PiGroup {
        &self.group
    }

    /// Every off-diagonal entry of row `i` is the identity.
    pub fn row_is_trivial(&self, i: usize) -> bool {
        self.entries[i].iter().all(|g| self.group.is_identity(g))
    }

    pub fn render_entry(&self, i: usize, j: usize) -> String {
        self.group.render(&self.entries[i][j])
    }
}

impl fmt::Display for LinkingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|g| self.group.render(g)).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

pub fn linking_matrix(p: &Nanophrase, triple: &HomotopyDataTriple) -> Result<LinkingMatrix> {
    let group = PiGroup::new(triple);
    let n = p.num_components();
    let mut entries = vec![vec![group.identity(); n]; n];
    let occ = p.occurrences();
    for l in p.letters() {
        let [x, y] = occ.get(l);
        if x.component != y.component {
            let s = p.symbol(l);
            group.mul_symbol(&mut entries[x.component][y.component], s, 1)?;
            group.mul_symbol(&mut entries[y.component][x.component], s, 1)?;
        }
    }
    Ok(LinkingMatrix { group, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hdt::parse_triple;
    use crate::phrase::parse_phrase;

    #[test]
    fn three_component_example() {
        let t = parse_triple("alpha: a b c").unwrap();
        let p = parse_phrase("A:a B:b C:c ; ABC|AC|B").unwrap();
        let m = linking_matrix(&p, &t).unwrap();
        assert_eq!(m.to_string(), "[[1,a*c,b],[a*c,1,1],[b,1,1]]");
        assert!(!m.row_is_trivial(0));
    }

    #[test]
    fn paired_symbols_cancel() {
        let t = parse_triple("alpha: a c\ntau: a<->c").unwrap();
        let p = parse_phrase("A:a C:c ; AC|AC").unwrap();
        let m = linking_matrix(&p, &t).unwrap();
        assert!(m.row_is_trivial(0));
    }
}
