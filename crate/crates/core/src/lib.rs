//! Locally checkable labellings over finitely generated groups, separated
//! colorings, and exact window-scale search with replayable certificates.

pub mod error;
pub mod gamma_graph;
pub mod group;
pub mod lcl;
pub mod reports;
pub mod search;
pub mod separation;
pub mod subshift;
pub mod union_find;
pub mod window;

pub use error::{Error, Result};
pub use group::{Element, GenSet, Group};
pub use lcl::{LclInstance, Pattern};
pub use window::{Color, Space, Window, WindowConfiguration};
