// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace blockdpp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace blockdpp
