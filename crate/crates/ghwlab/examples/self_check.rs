//! Run the core self-verification suite programmatically. One probe is an
//! inconsistency by design and reports EXPECTED_DISCREPANCY without
//! failing the suite.

use ghwlab::verify::{render_results, run_suite, suite_passes, Suite};

fn main() {
    let results = run_suite(Suite::Core);
    print!("{}", render_results(&results));
    assert!(suite_passes(&results));
}
