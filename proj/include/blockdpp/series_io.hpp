// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "blockdpp/sampler.hpp"
#include "blockdpp/stats.hpp"

namespace blockdpp {

enum class OutputFormat { csv, json };

/// Writes one or more series sharing an x grid as CSV: a `#` metadata comment
/// block (sorted keys), a header row, then RFC-4180-quoted data rows.
void write_series_csv(std::ostream& os, std::span<const StatSeries> series);

/// Same content as a single JSON object.
void write_series_json(std::ostream& os, std::span<const StatSeries> series);

/// Sample dump: one row per replicate (replicate_index, sorted positions...).
void write_samples_csv(std::ostream& os, std::span<const PointSample> samples,
                       const std::vector<std::pair<std::string, std::string>>& meta);

/// Columnar JSON alternative of the sample dump.
void write_samples_json(std::ostream& os, std::span<const PointSample> samples,
                        const std::vector<std::pair<std::string, std::string>>& meta);

/// RFC-4180 quoting: wraps in quotes when the field contains a comma, quote,
/// or newline; embedded quotes are doubled.
std::string csv_quote(const std::string& field);

}  // namespace blockdpp
