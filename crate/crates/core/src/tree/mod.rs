//! Constructible trees: node rings, gcd trees with Bézout data at the
//! leaves, and the collapse of leaf witnesses back to the root.

mod collapse;
mod frac;
mod gcd;
mod node;

pub use collapse::{collapse_step, collapse_tree, Collapse, Mode};
pub use frac::{Frac, FracRing};
pub use gcd::{gcd_tree, show_frac, GcdTree, LeafCert, LeafData};
pub use node::{Class, NodeRing};

#[allow(unused_imports)]
pub(crate) use collapse::{collapse_mode, Outcome};
#[allow(unused_imports)]
pub(crate) use gcd::embed;
