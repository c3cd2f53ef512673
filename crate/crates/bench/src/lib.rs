// Copyright 2026 The zeno-toolkit Authors
// SPDX-License-Identifier: Apache-2.0

//! Criterion benchmarks for `zeno-core`; see `benches/`.
