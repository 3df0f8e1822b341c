// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <vector>

namespace agasp::experiments {

double mean(const std::vector<double>& xs);
double sample_variance(const std::vector<double>& xs);

// Nearest-rank percentile (p in (0,100]); input need not be sorted.
double percentile_nearest_rank(std::vector<double> xs, double p);

// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

} // namespace agasp::experiments
