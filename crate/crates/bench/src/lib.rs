//! Shared inputs for the criterion benchmarks in `benches/`.

/// Rewrite rules timed by the rewrite-checking benchmark.
pub const RULES: [&str; 5] = [
    "-(x-y) => y-x",
    "(-x)-(-y) => y-x",
    "x+(+0) => x",
    "-(-x) => x",
    "(x*y)/z => x*(y/z)",
];

/// `(max_base, max_exponent)` pairs for the search benchmark.
pub const SEARCH_BOUNDS: [(u32, u32); 3] = [(25, 5), (50, 6), (100, 7)];
