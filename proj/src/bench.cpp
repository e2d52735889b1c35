#include "zonovol/bench.hpp"

#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cstdio>
#include <sstream>

#include "zonovol/combinatorics.hpp"

namespace zonovol {

std::string format_volume(double v, bool full_precision) {
  char buf[48];
  if (full_precision) {
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
  }
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

std::uint64_t exact_det_cost(const SystemModel& model, int horizon) {
  return binomial(model.input_dim() * static_cast<long long>(horizon),
                  model.state_dim());
}

std::vector<BenchRow> run_bench(const SystemModel& model,
                                const BenchQuery& query) {
  if (query.horizons.empty()) {
    throw ContractViolation("at least one horizon required");
  }
  if (query.methods.empty()) {
    throw ContractViolation("at least one method required");
  }
  for (int h : query.horizons) {
    if (h < 1) {
      throw ContractViolation("horizon must be at least 1, got " +
                              std::to_string(h));
    }
  }

  std::vector<BenchRow> rows;
  rows.reserve(query.horizons.size() * query.methods.size());
  for (int horizon : query.horizons) {
    for (MethodChoice method : query.methods) {
      BenchRow row;
      row.horizon = horizon;
      row.method = method;
      if (method == MethodChoice::Analytic) {
        row.note = "analytic applies to the infinite horizon only";
        rows.push_back(std::move(row));
        continue;
      }
      if (method == MethodChoice::Exact) {
        const std::uint64_t cost = exact_det_cost(model, horizon);
        if (cost > query.det_budget) {
          row.note = "skipped: exact needs " + std::to_string(cost) +
                     " determinants, budget " +
                     std::to_string(query.det_budget) +
                     " (raise --det-budget)";
          rows.push_back(std::move(row));
          continue;
        }
      }
      try {
        const auto t0 = std::chrono::steady_clock::now();
        const VolumeResult res =
            region_volume(model, query.region, horizon, method);
        const auto t1 = std::chrono::steady_clock::now();
        row.computed = true;
        row.volume = res.volume;
        row.det_count = res.det_count;
        row.mult_count = res.mult_count;
        row.wall_ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
        row.note = res.notes;
      } catch (const Error& e) {
        row.note = e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string bench_to_csv(const std::vector<BenchRow>& rows,
                         bool full_precision) {
  std::ostringstream out;
  out << "N,v_r,method,n_d,n_p,wall_ms\n";
  for (const BenchRow& row : rows) {
    out << row.horizon << ',';
    if (row.computed) {
      char wall[32];
      std::snprintf(wall, sizeof(wall), "%.3f", row.wall_ms);
      out << format_volume(row.volume, full_precision) << ','
          << method_choice_name(row.method) << ',' << row.det_count << ','
          << row.mult_count << ',' << wall;
    } else {
      out << "NA," << method_choice_name(row.method) << ",NA,NA,0.000";
    }
    out << '\n';
  }
  return out.str();
}

std::string bench_to_json(const std::vector<BenchRow>& rows,
                          bool /*full_precision*/) {
  nlohmann::json arr = nlohmann::json::array();
  for (const BenchRow& row : rows) {
    nlohmann::json cell;
    cell["N"] = row.horizon;
    cell["method"] = method_choice_name(row.method);
    cell["computed"] = row.computed;
    if (row.computed) {
      cell["v_r"] = row.volume;
      cell["n_d"] = row.det_count;
      cell["n_p"] = row.mult_count;
      cell["wall_ms"] = row.wall_ms;
    } else {
      cell["v_r"] = nullptr;
    }
    if (!row.note.empty()) cell["note"] = row.note;
    arr.push_back(std::move(cell));
  }
  return arr.dump(2) + "\n";
}

std::string bench_to_text(const std::vector<BenchRow>& rows,
                          bool full_precision) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%6s  %-13s  %-10s  %12s  %12s  %10s\n",
                "N", "v_r", "method", "n_d", "n_p", "wall_ms");
  out << line;
  for (const BenchRow& row : rows) {
    if (row.computed) {
      char wall[32];
      std::snprintf(wall, sizeof(wall), "%.3f", row.wall_ms);
      std::snprintf(line, sizeof(line), "%6d  %-13s  %-10s  %12llu  %12llu  %10s",
                    row.horizon,
                    format_volume(row.volume, full_precision).c_str(),
                    method_choice_name(row.method),
                    static_cast<unsigned long long>(row.det_count),
                    static_cast<unsigned long long>(row.mult_count), wall);
    } else {
      std::snprintf(line, sizeof(line), "%6d  %-13s  %-10s  %12s  %12s  %10s",
                    row.horizon, "NA", method_choice_name(row.method), "NA",
                    "NA", "0.000");
    }
    out << line;
    if (!row.note.empty()) out << "  # " << row.note;
    out << '\n';
  }
  return out.str();
}

}  // namespace zonovol
