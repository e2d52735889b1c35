#ifndef ZONOVOL_BENCH_HPP
#define ZONOVOL_BENCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "zonovol/regions.hpp"

namespace zonovol {

/// Exact-method work cap: horizons whose full enumeration would evaluate
/// more determinants than this are skipped with an explanatory note.
inline constexpr std::uint64_t kDefaultDetBudget = 500'000'000;

struct BenchQuery {
  RegionKind region = RegionKind::Reachable;
  std::vector<int> horizons;
  std::vector<MethodChoice> methods;
  std::uint64_t det_budget = kDefaultDetBudget;
};

/// One (horizon, method) cell. When computed is false, note says why the
/// cell was skipped or failed and the numeric fields are meaningless.
struct BenchRow {
  int horizon = 0;
  MethodChoice method = MethodChoice::Auto;
  bool computed = false;
  double volume = 0.0;
  std::uint64_t det_count = 0;
  std::uint64_t mult_count = 0;
  double wall_ms = 0.0;
  std::string note;
};

/// Number of determinants the exact method would evaluate at this horizon.
std::uint64_t exact_det_cost(const SystemModel& model, int horizon);

/// Runs every requested method at every horizon. A method that is
/// inapplicable at some horizon (or over budget for exact) yields an
/// annotated row; the run continues. Results are deterministic for a fixed
/// model and query except for wall_ms.
std::vector<BenchRow> run_bench(const SystemModel& model,
                                const BenchQuery& query);

/// `N,v_r,method,n_d,n_p,wall_ms` rows; skipped cells carry NA fields.
std::string bench_to_csv(const std::vector<BenchRow>& rows,
                         bool full_precision);
std::string bench_to_json(const std::vector<BenchRow>& rows,
                          bool full_precision);
std::string bench_to_text(const std::vector<BenchRow>& rows,
                          bool full_precision);

/// Scientific notation with 4 significant digits, or shortest round-trip
/// when full is set.
std::string format_volume(double v, bool full_precision);

}  // namespace zonovol

#endif
