//! Holds the `acceptance` test target, which drives the `ghostage` binary.
