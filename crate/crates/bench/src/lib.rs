//! Fixtures shared by the criterion benches.

use vbraid::suites::sample_kernel_words;
use vbraid::{BraidWord, Target};

/// Fixed pool of kernel words per strand count, so runs compare like with like.
pub fn kernel_pool(n: usize, target: Target) -> Vec<BraidWord> {
    sample_kernel_words(n, 256, 30, target, 0xB4A1D)
}
