#pragma once

// End-to-end commands producing JSON reports; shared by the CLI and the
// Python module.

#include <optional>

#include "shabound/json_io.hpp"

namespace shabound {

struct AnalyzeRequest {
  Curve curve;
  Point point;
  unsigned p = 5;
  /// Kernel polynomial of a second p-isogeny on the minimal model.
  std::optional<Poly> second_kernel;
};

Json run_analyze(const AnalyzeRequest& req, const FactorBudget& budget = {});
Json run_sandwich(const AnalyzeRequest& req, const FactorBudget& budget = {});
Json run_matrix(unsigned p, const std::vector<Int>& s1, const std::vector<Int>& s2);

struct BoundsRequest {
  FieldInvariants field;
  std::int64_t s1 = 0, s2 = 0, m = 0, m_hat = 0;
  std::optional<std::int64_t> m_psi, m_psi_hat, dim_phi;
  std::optional<std::int64_t> selmer_sum, rank;
};
Json run_bounds(const BoundsRequest& req);
Json run_budget(std::int64_t p, std::int64_t k, std::int64_t n, std::int64_t deg_h, std::int64_t c3 = 1);

/// `config` holds "p" plus the SearchConstraints keys.
Json run_search(const Json& config, unsigned jobs, const FactorBudget& budget = {},
                const ProgressFn& progress = {});

unsigned parse_degree(const Json& j);

}  // namespace shabound
