#include "mqc/cli.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <climits>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "mqc/bounds.hpp"
#include "mqc/combinatorics.hpp"

namespace mqc::cli {

namespace {

using nlohmann::ordered_json;

std::string format_real(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

/// One table cell; keeps enough type information for both CSV and JSON.
struct Cell {
  enum class Kind { integer, real, big, text, empty };
  Kind kind = Kind::empty;
  long long int_value = 0;
  double real_value = 0.0;
  std::string text;

  static Cell of(long long v) { return {Kind::integer, v, 0.0, {}}; }
  static Cell of(int v) { return of(static_cast<long long>(v)); }
  static Cell of(double v) { return {Kind::real, 0, v, {}}; }
  static Cell of_big(const BigCount& v) { return {Kind::big, 0, 0.0, to_decimal(v)}; }
  static Cell of_text(std::string v) { return {Kind::text, 0, 0.0, std::move(v)}; }
  static Cell none() { return {}; }
};

using Row = std::vector<Cell>;

struct Table {
  std::vector<std::string> columns;
  std::vector<Row> rows;
};

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ',';
    out << table.columns[c];
  }
  out << '\n';
  for (const Row& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      const Cell& cell = row[c];
      switch (cell.kind) {
        case Cell::Kind::integer: out << cell.int_value; break;
        case Cell::Kind::real: out << format_real(cell.real_value); break;
        case Cell::Kind::big:
        case Cell::Kind::text: out << cell.text; break;
        case Cell::Kind::empty: break;
      }
    }
    out << '\n';
  }
}

ordered_json meta_json(const CommonOptions& common) {
  ordered_json meta;
  meta["tool"] = kToolName;
  meta["version"] = kToolVersion;
  meta["command_line"] = common.command_line;
  meta["seed"] = common.seed;
  return meta;
}

void write_json(std::ostream& out, const Table& table, const CommonOptions& common) {
  ordered_json doc;
  doc["meta"] = meta_json(common);
  ordered_json rows = ordered_json::array();
  for (const Row& row : table.rows) {
    ordered_json obj;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const Cell& cell = row[c];
      const std::string& key = table.columns[c];
      switch (cell.kind) {
        case Cell::Kind::integer: obj[key] = cell.int_value; break;
        case Cell::Kind::real: obj[key] = cell.real_value; break;
        case Cell::Kind::big:
        case Cell::Kind::text: obj[key] = cell.text; break;
        case Cell::Kind::empty: obj[key] = nullptr; break;
      }
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

void emit(std::ostream& out, const Table& table, const CommonOptions& common) {
  if (common.format == Format::json) {
    write_json(out, table, common);
  } else {
    write_csv(out, table);
  }
}

/// Deterministic parallel map: results land in slot order no matter how the
/// work is scheduled.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  unsigned workers = threads == 0 ? std::thread::hardware_concurrency() : threads;
  if (workers == 0) workers = 1;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream stream(text);
  while (std::getline(stream, item, sep)) parts.push_back(item);
  return parts;
}

long long parse_ll(const std::string& text) {
  std::size_t pos = 0;
  long long value = 0;
  try {
    value = std::stoll(text, &pos);
  } catch (const std::exception&) {
    throw UsageError("not an integer: '" + text + "'");
  }
  if (pos != text.size()) throw UsageError("not an integer: '" + text + "'");
  return value;
}

double parse_double(const std::string& text) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + text + "'");
  }
  if (pos != text.size()) throw UsageError("not a number: '" + text + "'");
  return value;
}

void sort_unique_int(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void sort_unique_real(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void require(bool condition, const std::string& message) {
  if (!condition) throw UsageError(message);
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  for (const auto& part : split(text, ',')) {
    const long long v = parse_ll(part);
    require(v >= INT_MIN && v <= INT_MAX, "integer out of range: '" + part + "'");
    values.push_back(static_cast<int>(v));
  }
  require(!values.empty(), "empty integer list");
  return values;
}

std::vector<int> parse_int_range(const std::string& text) {
  const auto parts = split(text, ':');
  require(parts.size() == 3, "range must be start:stop:step, got '" + text + "'");
  const long long start = parse_ll(parts[0]);
  const long long stop = parse_ll(parts[1]);
  const long long step = parse_ll(parts[2]);
  require(step > 0, "range step must be positive");
  require(start <= stop, "range start must not exceed stop");
  std::vector<int> values;
  for (long long v = start; v <= stop; v += step) values.push_back(static_cast<int>(v));
  return values;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> values;
  for (const auto& part : split(text, ',')) values.push_back(parse_double(part));
  require(!values.empty(), "empty list");
  return values;
}

std::vector<double> parse_real_range(const std::string& text) {
  const auto parts = split(text, ':');
  require(parts.size() == 3, "range must be start:stop:step, got '" + text + "'");
  const double start = parse_double(parts[0]);
  const double stop = parse_double(parts[1]);
  const double step = parse_double(parts[2]);
  require(step > 0.0, "range step must be positive");
  require(start <= stop, "range start must not exceed stop");
  // Integer stepping keeps endpoint inclusion deterministic; the last point
  // may overshoot stop by an ulp, so clamp it back into the range.
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> values;
  values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    values.push_back(std::min(start + static_cast<double>(i) * step, stop));
  }
  return values;
}

int run_bounds(const BoundsParams& params, std::ostream& out) {
  BoundsParams p = params;
  require(!p.n_values.empty(), "bounds: --n is required");
  require(!p.p_values.empty(), "bounds: --p or --p-range is required");
  require(!p.q_values.empty(), "bounds: --q or --q-range is required");
  sort_unique_int(p.n_values);
  sort_unique_real(p.p_values);
  sort_unique_int(p.q_values);
  for (int n : p.n_values) require(n >= 1, "bounds: N must be positive");
  for (double pol : p.p_values) {
    require(pol >= 0.0 && pol <= 1.0, "bounds: p must lie in [0, 1]");
  }
  require(p.q_values.front() >= 1, "bounds: q must be at least 1");
  require(p.q_values.back() <= p.n_values.front(),
          "bounds: every q must satisfy q <= N for every N in the sweep");

  const std::size_t cells = p.n_values.size() * p.p_values.size();
  std::vector<std::vector<BoundResult>> results(cells);
  parallel_for(cells, p.common.threads, [&](std::size_t i) {
    const int n = p.n_values[i / p.p_values.size()];
    const double pol = p.p_values[i % p.p_values.size()];
    const BoundEvaluator eval(n, pol);
    auto& rows = results[i];
    rows.reserve(p.q_values.size());
    for (int q : p.q_values) rows.push_back(eval.evaluate(q));
  });

  Table table;
  table.columns = {"N", "q", "p", "rank", "lower", "upper", "log_lower", "log_upper"};
  for (const auto& cell : results) {
    for (const BoundResult& r : cell) {
      table.rows.push_back({Cell::of(r.num_spins), Cell::of(r.q), Cell::of(r.p),
                            Cell::of_big(BigCount(2 * r.r)), Cell::of(r.lower),
                            Cell::of(r.upper), Cell::of(r.log_lower),
                            Cell::of(r.log_upper)});
    }
  }
  emit(out, table, p.common);
  return kExitOk;
}

int run_transition(const TransitionParams& params, std::ostream& out) {
  TransitionParams p = params;
  require(!p.n_values.empty(), "transition: --n is required");
  require(!p.p_values.empty(), "transition: --p or --p-range is required");
  sort_unique_int(p.n_values);
  sort_unique_real(p.p_values);
  for (int n : p.n_values) require(n >= 1, "transition: N must be positive");
  for (double pol : p.p_values) {
    require(pol > 0.0 && pol < 1.0, "transition: p must lie strictly in (0, 1)");
  }

  const std::size_t cells = p.n_values.size() * p.p_values.size();
  std::vector<TransitionReport> reports(cells);
  parallel_for(cells, p.common.threads, [&](std::size_t i) {
    const int n = p.n_values[i / p.p_values.size()];
    const double pol = p.p_values[i % p.p_values.size()];
    reports[i] = transition_report(n, pol);
  });

  Table table;
  table.columns = {"N", "p", "q_half_lower", "q_half_upper", "width", "q_c_model", "Q_c_cap"};
  for (const auto& r : reports) {
    table.rows.push_back(
        {Cell::of(r.num_spins), Cell::of(r.p),
         r.q_half_lower ? Cell::of(*r.q_half_lower) : Cell::none(),
         r.q_half_upper ? Cell::of(*r.q_half_upper) : Cell::none(),
         r.width ? Cell::of(*r.width) : Cell::none(), Cell::of(r.q_c_model),
         Cell::of(r.q_c_cap)});
  }
  emit(out, table, p.common);
  return kExitOk;
}

int run_figure2(const Figure2Params& params, std::ostream& out) {
  Figure2Params p = params;
  require(p.p > 0.0 && p.p < 1.0, "figure2: p must lie strictly in (0, 1)");
  require(!p.n_values.empty(), "figure2: --n or --n-range is required");
  sort_unique_int(p.n_values);
  require(p.n_values.front() >= 2, "figure2: N must be at least 2 (q = N-1 needs it)");

  struct Figure2Row {
    int n = 0;
    SignedLog b_qn, upper_qn, b_qnm1, upper_qnm1;
  };
  std::vector<Figure2Row> rows(p.n_values.size());
  parallel_for(p.n_values.size(), p.common.threads, [&](std::size_t i) {
    const int n = p.n_values[i];
    const BoundEvaluator eval(n, p.p);
    rows[i] = {n, eval.lower(n), eval.upper(n), eval.lower(n - 1), eval.upper(n - 1)};
  });

  Table table;
  table.columns = {"N",        "b_qN",     "B_qN",       "b_qNm1",     "B_qNm1",
                   "log_b_qN", "log_B_qN", "log_b_qNm1", "log_B_qNm1"};
  for (const auto& r : rows) {
    table.rows.push_back({Cell::of(r.n), Cell::of(r.b_qn.to_double()),
                          Cell::of(r.upper_qn.to_double()), Cell::of(r.b_qnm1.to_double()),
                          Cell::of(r.upper_qnm1.to_double()), Cell::of(r.b_qn.log_mag()),
                          Cell::of(r.upper_qn.log_mag()), Cell::of(r.b_qnm1.log_mag()),
                          Cell::of(r.upper_qnm1.log_mag())});
  }
  emit(out, table, p.common);
  return kExitOk;
}

int run_profile(const ProfileParams& params, std::ostream& out) {
  require(params.num_spins >= 1, "profile: N must be positive");
  require(params.p >= 0.0 && params.p <= 1.0, "profile: p must lie in [0, 1]");
  require(!params.q_values.empty(), "profile: --q or --q-range is required");

  const double width = model_transition_width(params.num_spins, params.p);
  Table table;
  table.columns = {"N", "p", "q", "intensity", "model_width"};
  for (double q : params.q_values) {
    table.rows.push_back({Cell::of(params.num_spins), Cell::of(params.p), Cell::of(q),
                          Cell::of(convolution_profile(params.num_spins, params.p, q)),
                          Cell::of(width)});
  }
  emit(out, table, params.common);
  return kExitOk;
}

int run_rank(const RankParams& params, std::ostream& out) {
  RankParams p = params;
  require(!p.n_values.empty(), "rank: --n is required");
  sort_unique_int(p.n_values);
  for (int n : p.n_values) require(n >= 1, "rank: N must be positive");
  if (p.q_values) {
    sort_unique_int(*p.q_values);
    require(p.q_values->front() >= 1, "rank: q must be at least 1");
    require(p.q_values->back() <= p.n_values.front(),
            "rank: every q must satisfy q <= N for every N in the sweep");
  }

  Table table;
  table.columns = {"N", "q", "rank", "half_rank"};
  for (int n : p.n_values) {
    const auto row = binomial_row(n);
    std::vector<int> qs;
    if (p.q_values) {
      qs = *p.q_values;
    } else {
      qs.resize(static_cast<std::size_t>(n));
      for (int q = 1; q <= n; ++q) qs[static_cast<std::size_t>(q - 1)] = q;
    }
    for (int q : qs) {
      const BigCount rank = max_rank_from_row(row, n, q);
      table.rows.push_back(
          {Cell::of(n), Cell::of(q), Cell::of_big(rank), Cell::of_big(BigCount(rank / 2))});
    }
  }
  emit(out, table, p.common);
  return kExitOk;
}

int run_snr(const SnrParams& params, std::ostream& out) {
  SnrParams p = params;
  require(!p.n_values.empty(), "snr: --n is required");
  require(!p.p_values.empty(), "snr: --p or --p-range is required");
  require(!p.q_values.empty(), "snr: --q or --q-range is required");
  sort_unique_int(p.n_values);
  sort_unique_real(p.p_values);
  sort_unique_int(p.q_values);
  for (int n : p.n_values) require(n >= 1, "snr: N must be positive");
  for (double pol : p.p_values) {
    require(pol >= 0.0 && pol <= 1.0, "snr: p must lie in [0, 1]");
  }
  require(p.q_values.front() >= 1, "snr: q must be at least 1");
  require(p.q_values.back() <= p.n_values.front(),
          "snr: every q must satisfy q <= N for every N in the sweep");

  Table table;
  table.columns = {"N", "q", "p", "eta", "log_eta", "inside_observable"};
  for (int n : p.n_values) {
    for (double pol : p.p_values) {
      for (int q : p.q_values) {
        const SnrRequirement req = snr_requirement(n, q, pol);
        table.rows.push_back({Cell::of(n), Cell::of(q), Cell::of(pol), Cell::of(req.eta),
                              Cell::of(req.log_eta),
                              Cell::of(req.inside_observable ? 1 : 0)});
      }
    }
  }
  emit(out, table, p.common);
  return kExitOk;
}

std::string verify_report_json(const VerifyReport& report, const CommonOptions& common) {
  ordered_json doc;
  doc["meta"] = meta_json(common);
  doc["max_n"] = report.max_spins;
  doc["overall_pass"] = report.overall_pass;
  ordered_json checks = ordered_json::array();
  for (const CheckRecord& record : report.checks) {
    ordered_json item;
    item["name"] = record.name;
    item["params"] = record.params;
    item["status"] = record.pass ? "pass" : "fail";
    item["max_residual"] = record.max_residual;
    checks.push_back(std::move(item));
  }
  doc["checks"] = std::move(checks);
  return doc.dump(2);
}

int run_verify(const VerifyParams& params, std::ostream& out) {
  require(params.max_spins >= 1 && params.max_spins <= 8,
          "verify: --max-n must lie in [1, 8]");
  const VerifyReport report = run_verification(params.max_spins, params.common.seed);
  if (params.common.format == Format::csv) {
    Table table;
    table.columns = {"name", "params", "status", "max_residual"};
    for (const CheckRecord& record : report.checks) {
      table.rows.push_back({Cell::of_text(record.name), Cell::of_text(record.params),
                            Cell::of_text(record.pass ? "pass" : "fail"),
                            Cell::of(record.max_residual)});
    }
    write_csv(out, table);
  } else {
    out << verify_report_json(report, params.common) << '\n';
  }
  return report.overall_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace mqc::cli
