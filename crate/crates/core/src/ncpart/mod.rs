//! Set and noncrossing partitions, Weingarten calculus for S_N⁺, and the
//! algebra C(S_N⁺) with its Haar state and row conditional expectations.

mod matrix;
mod moments;
mod partition;
mod snplus;
mod weingarten;

pub use matrix::Matrix;
pub use moments::{character_moment, haar_moment, permutations};
pub use partition::{enumerate_partitions, join_block_count, Partition};
pub use snplus::{cond_expect_row, SnPlus, UWord};
pub use weingarten::{gram_matrix, weingarten_data, weingarten_matrix, WeingartenData};

pub(crate) use snplus::render_terms;
