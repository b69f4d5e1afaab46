//! Library side of the `cutpack` binary: the benchmark harness and the JSON
//! output payloads, shared with the integration and acceptance tests.

pub mod bench;
pub mod output;
