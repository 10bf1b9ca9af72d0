//! Homotopy invariants of nanophrases: component parities, the linking
//! matrix, the self-linking invariants `V` and `U`, and Fukunaga's `S_o`.

mod linking;
mod pi;
mod self_linking;
mod so;

use std::fmt;

pub use linking::{linking_matrix, LinkingMatrix};
pub use pi::{PiElement, PiGroup};
pub use self_linking::{u_invariant, u_vectors, v_invariant, v_vectors, UInvariant, VInvariant};
pub use so::{h_map, kappa, so_invariant, so_vectors, KVector, SoInvariant};

use crate::error::Result;
use crate::hdt::HomotopyDataTriple;
use crate::phrase::Nanophrase;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum InvariantKind {
    Parity,
    Linking,
    V,
    U,
    So,
}

impl InvariantKind {
    pub const ALL: [InvariantKind; 5] =
        [InvariantKind::Parity, InvariantKind::Linking, InvariantKind::V, InvariantKind::U, InvariantKind::So];

    pub fn name(self) -> &'static str {
        match self {
            InvariantKind::Parity => "parity",
            InvariantKind::Linking => "linking",
            InvariantKind::V => "v",
            InvariantKind::U => "u",
            InvariantKind::So => "so",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(s))
    }

    /// `U` and `S_o` are only invariant when `S` is diagonal.
    pub fn applies_to(self, triple: &HomotopyDataTriple) -> bool {
        !matches!(self, InvariantKind::U | InvariantKind::So) || triple.is_diagonal()
    }

    /// Text form of the invariant. Two phrases with the same number of
    /// components agree on the invariant iff the renderings agree.
    pub fn render(self, p: &Nanophrase, triple: &HomotopyDataTriple) -> Result<String> {
        Ok(match self {
            InvariantKind::Parity => render_parities(&p.component_parities()),
            InvariantKind::Linking => linking_matrix(p, triple)?.to_string(),
            InvariantKind::V => v_invariant(p, triple)?.to_string(),
            InvariantKind::U => u_invariant(p, triple)?.to_string(),
            InvariantKind::So => so_invariant(p, triple)?.to_string(),
        })
    }
}

impl fmt::Display for InvariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn render_parities(v: &[u8]) -> String {
    format!("({})", v.iter().map(u8::to_string).collect::<Vec<_>>().join(","))
}

/// Renderings of every applicable invariant, joined into one key. Phrases
/// with different fingerprints are not homotopic.
pub fn fingerprint(p: &Nanophrase, triple: &HomotopyDataTriple) -> Result<String> {
    let mut parts = vec![format!("nc={}", p.num_components())];
    for k in [InvariantKind::Parity, InvariantKind::Linking, InvariantKind::V, InvariantKind::U] {
        if k.applies_to(triple) {
            parts.push(format!("{}={}", k, k.render(p, triple)?.replace('\n', " ")));
        }
    }
    Ok(parts.join(" / "))
}
