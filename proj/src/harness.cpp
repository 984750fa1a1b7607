#include "fairkc/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "fairkc/audit.hpp"
#include "fairkc/solvers.hpp"

namespace fairkc {

using json = nlohmann::ordered_json;

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         std::equal(suffix.rbegin(), suffix.rend(), s.rbegin(),
                    [](char a, char b) { return std::tolower(a) == b; });
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Splits one CSV line; double quotes group fields and "" escapes a quote.
std::vector<std::string> split_csv_line(const std::string& line, int row) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw ParseError("row " + std::to_string(row) + ": unterminated quote");
  out.push_back(trim(cur));
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

double parse_double(const std::string& s, const std::string& where) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ParseError(where + ": '" + s + "' is not a number");
  }
  return v;
}

int parse_int(const std::string& s, const std::string& where) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ParseError(where + ": '" + s + "' is not an integer");
  }
  return static_cast<int>(v);
}

std::string format_double(double v) {
  if (std::isinf(v)) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json number_or_inf(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

double json_double(const json& v) {
  if (v.is_string() && v.get<std::string>() == "inf") {
    return std::numeric_limits<double>::infinity();
  }
  return v.get<double>();
}

template <typename T>
json opt(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_floating_point_v<T>) {
    return number_or_inf(*v);
  } else {
    return *v;
  }
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

const std::vector<std::string> kCsvColumns = {
    "k", "algorithm", "status", "cost", "pof", "gf_violation",
    "ds_violation", "socially_fair", "num_centers", "message"};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Attempt {
  std::optional<Solution> solution;
  std::string status = "ok";
  std::string message;
  double seconds = 0.0;
};

Attempt attempt(const std::function<Solution()>& fn) {
  Attempt a;
  const auto start = Clock::now();
  try {
    a.solution = fn();
  } catch (const InfeasibleError& e) {
    a.status = "infeasible";
    a.message = e.what();
  } catch (const std::exception& e) {
    a.status = "error";
    a.message = e.what();
  }
  a.seconds = seconds_since(start);
  return a;
}

}  // namespace

InstanceFormat instance_format_for(const std::string& path) {
  return ends_with(path, ".csv") ? InstanceFormat::kCsv : InstanceFormat::kMatrixJson;
}

ReportFormat report_format_for(const std::string& path) {
  return ends_with(path, ".csv") ? ReportFormat::kCsv : ReportFormat::kJson;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed for " + path);
}

Instance parse_csv_instance(const std::string& text) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw ParseError("row 1: missing header");
  const auto header = split_csv_line(lines[0], 1);
  int color_col = -1;
  std::vector<int> feature_col;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto& name = header[c];
    if (name == "color") {
      if (color_col >= 0) throw ParseError("row 1: duplicate color column");
      color_col = static_cast<int>(c);
    } else if (name.size() > 1 && name[0] == 'f' &&
               std::all_of(name.begin() + 1, name.end(), ::isdigit)) {
      const int idx = std::stoi(name.substr(1));
      if (idx >= static_cast<int>(feature_col.size())) feature_col.resize(idx + 1, -1);
      if (feature_col[idx] >= 0) {
        throw ParseError("row 1, column " + std::to_string(c + 1) +
                         ": duplicate feature " + name);
      }
      feature_col[idx] = static_cast<int>(c);
    } else {
      throw ParseError("row 1, column " + std::to_string(c + 1) +
                       ": unexpected column '" + name + "'");
    }
  }
  if (color_col < 0) throw ParseError("row 1: no color column");
  if (feature_col.empty()) throw ParseError("row 1: no feature columns");
  for (std::size_t f = 0; f < feature_col.size(); ++f) {
    if (feature_col[f] < 0) {
      throw ParseError("row 1: feature column f" + std::to_string(f) + " missing");
    }
  }

  std::vector<std::vector<double>> features;
  std::vector<int> colors;
  std::map<std::string, int> label_index;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const int row = static_cast<int>(r) + 1;
    const auto cells = split_csv_line(lines[r], row);
    if (cells.size() != header.size()) {
      throw ParseError("row " + std::to_string(row) + ": expected " +
                       std::to_string(header.size()) + " fields, got " +
                       std::to_string(cells.size()));
    }
    std::vector<double> point(feature_col.size());
    for (std::size_t f = 0; f < feature_col.size(); ++f) {
      const std::string where =
          "row " + std::to_string(row) + ", column " + std::to_string(feature_col[f] + 1);
      point[f] = parse_double(cells[feature_col[f]], where);
      if (!std::isfinite(point[f])) throw ParseError(where + ": non-finite value");
    }
    const auto& label = cells[color_col];
    if (label.empty()) {
      throw ParseError("row " + std::to_string(row) + ", column " +
                       std::to_string(color_col + 1) + ": empty color label");
    }
    auto [it, fresh] = label_index.emplace(label, static_cast<int>(label_index.size()));
    features.push_back(std::move(point));
    colors.push_back(it->second);
  }
  if (features.empty()) throw ParseError("no data rows");
  const int m = static_cast<int>(label_index.size());
  if (m < 2) {
    throw ColorCardinality("dataset has " + std::to_string(m) +
                           " color(s), at least 2 needed");
  }
  return Instance::from_features(std::move(features), std::move(colors), m);
}

Instance parse_matrix_json(const std::string& text) {
  const auto doc = parse_json_text(text);
  try {
    const int n = doc.at("n").get<int>();
    const int m = doc.at("m").get<int>();
    auto colors = doc.at("colors").get<std::vector<int>>();
    const auto rows = doc.at("dist").get<std::vector<std::vector<double>>>();
    if (n < 1 || static_cast<int>(colors.size()) != n ||
        static_cast<int>(rows.size()) != n) {
      throw ParseError("n does not match colors/dist");
    }
    if (m < 2) {
      throw ColorCardinality("instance has " + std::to_string(m) +
                             " color(s), at least 2 needed");
    }
    std::vector<double> dist;
    dist.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[i].size()) != n) {
        throw ParseError("dist row " + std::to_string(i) + " has wrong length");
      }
      dist.insert(dist.end(), rows[i].begin(), rows[i].end());
    }
    return Instance::from_matrix(std::move(dist), std::move(colors), m);
  } catch (const InvalidInstance& e) {
    throw ParseError(e.what());
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad matrix JSON: ") + e.what());
  }
}

std::string matrix_json(const Instance& inst) {
  json rows = json::array();
  for (int i = 0; i < inst.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < inst.n(); ++j) row.push_back(inst.d(i, j));
    rows.push_back(std::move(row));
  }
  json doc;
  doc["n"] = inst.n();
  doc["m"] = inst.m();
  doc["colors"] = inst.colors();
  doc["dist"] = std::move(rows);
  return doc.dump() + "\n";
}

Instance load_instance(const std::string& path, InstanceFormat format) {
  const auto text = read_file(path);
  try {
    return format == InstanceFormat::kCsv ? parse_csv_instance(text)
                                          : parse_matrix_json(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Instance load_instance(const std::string& path) {
  return load_instance(path, instance_format_for(path));
}

std::string solution_json(const Solution& sol) {
  json doc;
  doc["centers"] = sol.centers;
  doc["assign"] = sol.assign;
  return doc.dump() + "\n";
}

Solution parse_solution_json(const std::string& text) {
  const auto doc = parse_json_text(text);
  try {
    return {doc.at("centers").get<std::vector<int>>(),
            doc.at("assign").get<std::vector<int>>()};
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad solution JSON: ") + e.what());
  }
}

ExperimentConfig parse_experiment_config(const std::string& text) {
  const auto doc = parse_json_text(text);
  ExperimentConfig cfg;
  try {
    cfg.input = doc.at("input").get<std::string>();
    cfg.k_values = doc.at("k_values").get<std::vector<int>>();
    cfg.output = doc.at("output").get<std::string>();
    if (doc.contains("delta")) cfg.delta = doc["delta"].get<double>();
    if (doc.contains("theta")) cfg.theta = doc["theta"].get<double>();
    if (doc.contains("p")) cfg.p = doc["p"].get<int>();
    if (doc.contains("seed") && !doc["seed"].is_null()) {
      cfg.seed = doc["seed"].get<unsigned long long>();
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad experiment config: ") + e.what());
  }
  return cfg;
}

ExperimentResult run_experiment(const Instance& inst, const ExperimentConfig& cfg) {
  if (cfg.k_values.empty()) throw std::invalid_argument("no k values");
  if (!(cfg.delta >= 0.0 && cfg.delta < 1.0)) {
    throw std::invalid_argument("delta must lie in [0, 1)");
  }
  if (!(cfg.theta >= 0.0 && cfg.theta <= 1.0)) {
    throw std::invalid_argument("theta must lie in [0, 1]");
  }
  if (cfg.p < 1) throw std::invalid_argument("p must be at least 1");

  ExperimentResult result;
  auto& report = result.report;
  report.input = cfg.input;
  report.n = inst.n();
  report.m = inst.m();
  report.delta = cfg.delta;
  report.theta = cfg.theta;
  report.p = cfg.p;
  report.seed = cfg.seed;

  const auto gfb = GFBounds::from_delta(inst, cfg.delta);
  for (int k : cfg.k_values) {
    std::optional<DSBounds> dsb;
    std::string ds_error;
    try {
      dsb = DSBounds::from_theta(inst, k, cfg.theta);
    } catch (const std::exception& e) {
      ds_error = e.what();
    }
    auto need_ds = [&]() -> const DSBounds& {
      if (!dsb) throw InfeasibleQuota(ds_error);
      return *dsb;
    };

    auto blind = attempt([&] { return gonzalez(inst, k, cfg.seed); });
    auto gf = attempt([&] { return alg_gf(inst, k, gfb, cfg.seed); });
    auto ds = attempt([&] { return alg_ds(inst, need_ds()); });
    auto follow = [&](const Attempt& input, auto&& post) {
      if (!input.solution) {
        Attempt a;
        a.status = input.status;
        a.message = "input stage failed: " + input.message;
        return a;
      }
      return attempt([&] { return post(*input.solution); });
    };
    auto gf_post = follow(gf, [&](const Solution& s) {
      return gf_to_gfds(inst, s, gfb, need_ds());
    });
    auto ds_post = follow(ds, [&](const Solution& s) {
      return ds_to_gfds(inst, s, gfb, need_ds());
    });

    const double blind_cost = blind.solution ? cost(inst, *blind.solution) : 0.0;
    const Attempt* attempts[] = {&blind, &gf, &ds, &gf_post, &ds_post};
    for (std::size_t a = 0; a < kAlgorithms.size(); ++a) {
      const auto& at = *attempts[a];
      ReportRow row;
      row.k = k;
      row.algorithm = kAlgorithms[a];
      row.status = at.status;
      row.message = at.message;
      if (at.solution) {
        const auto& sol = *at.solution;
        row.cost = cost(inst, sol);
        if (blind.solution) row.pof = pof(*row.cost, blind_cost);
        row.gf_violation = gf_violation(inst, gfb, sol);
        if (dsb) row.ds_violation = ds_violation(sol, *dsb, inst);
        row.socially_fair = socially_fair_cost(inst, sol, cfg.p);
        row.num_centers = static_cast<int>(sol.active_centers().size());
      }
      report.rows.push_back(std::move(row));
    }

    auto& timing = result.timing;
    timing.rows.push_back({k, "color-blind", blind.seconds});
    timing.rows.push_back({k, "alg-gf", gf.seconds});
    timing.rows.push_back({k, "alg-ds", ds.seconds});
    timing.rows.push_back({k, "gf-to-gfds", gf.seconds + gf_post.seconds});
    timing.rows.push_back({k, "ds-to-gfds", ds.seconds + ds_post.seconds});
    auto ratio = [](const Attempt& input, const Attempt& post) -> std::optional<double> {
      if (!post.solution || input.seconds <= 0.0) return std::nullopt;
      return post.seconds / input.seconds;
    };
    timing.gf_to_gfds_ratio.emplace_back(k, ratio(gf, gf_post));
    timing.ds_to_gfds_ratio.emplace_back(k, ratio(ds, ds_post));
  }
  return result;
}

std::string report_json(const Report& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    json row = json::object();
    row["k"] = r.k;
    row["algorithm"] = r.algorithm;
    row["status"] = r.status;
    row["cost"] = opt(r.cost);
    row["pof"] = opt(r.pof);
    row["gf_violation"] = opt(r.gf_violation);
    row["ds_violation"] = opt(r.ds_violation);
    row["socially_fair"] = opt(r.socially_fair);
    row["num_centers"] = opt(r.num_centers);
    row["message"] = r.message;
    rows.push_back(std::move(row));
  }
  json doc = json::object();
  doc["input"] = report.input;
  doc["n"] = report.n;
  doc["m"] = report.m;
  doc["delta"] = report.delta;
  doc["theta"] = report.theta;
  doc["p"] = report.p;
  doc["seed"] = opt(report.seed);
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string report_csv(const Report& report) {
  std::string out;
  for (std::size_t c = 0; c < kCsvColumns.size(); ++c) {
    out += (c ? "," : "") + kCsvColumns[c];
  }
  out += "\n";
  auto d = [](const std::optional<double>& v) { return v ? format_double(*v) : ""; };
  auto i = [](const std::optional<int>& v) { return v ? std::to_string(*v) : ""; };
  for (const auto& r : report.rows) {
    out += std::to_string(r.k) + "," + csv_field(r.algorithm) + "," +
           csv_field(r.status) + "," + d(r.cost) + "," + d(r.pof) + "," +
           d(r.gf_violation) + "," + i(r.ds_violation) + "," +
           d(r.socially_fair) + "," + i(r.num_centers) + "," +
           csv_field(r.message) + "\n";
  }
  return out;
}

Report parse_report_json(const std::string& text) {
  const auto doc = parse_json_text(text);
  Report report;
  try {
    report.input = doc.at("input").get<std::string>();
    report.n = doc.at("n").get<int>();
    report.m = doc.at("m").get<int>();
    report.delta = doc.at("delta").get<double>();
    report.theta = doc.at("theta").get<double>();
    report.p = doc.at("p").get<int>();
    if (!doc.at("seed").is_null()) report.seed = doc["seed"].get<unsigned long long>();
    for (const auto& row : doc.at("rows")) {
      ReportRow r;
      r.k = row.at("k").get<int>();
      r.algorithm = row.at("algorithm").get<std::string>();
      r.status = row.at("status").get<std::string>();
      r.message = row.at("message").get<std::string>();
      auto d = [&](const char* key) -> std::optional<double> {
        if (row.at(key).is_null()) return std::nullopt;
        return json_double(row[key]);
      };
      auto i = [&](const char* key) -> std::optional<int> {
        if (row.at(key).is_null()) return std::nullopt;
        return row[key].get<int>();
      };
      r.cost = d("cost");
      r.pof = d("pof");
      r.gf_violation = d("gf_violation");
      r.ds_violation = i("ds_violation");
      r.socially_fair = d("socially_fair");
      r.num_centers = i("num_centers");
      report.rows.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad report JSON: ") + e.what());
  }
  return report;
}

Report parse_report_csv(const std::string& text) {
  const auto lines = lines_of(text);
  if (lines.empty() || split_csv_line(lines[0], 1) != kCsvColumns) {
    throw ParseError("row 1: unexpected report header");
  }
  Report report;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const int row = static_cast<int>(l) + 1;
    const auto cells = split_csv_line(lines[l], row);
    if (cells.size() != kCsvColumns.size()) {
      throw ParseError("row " + std::to_string(row) + ": wrong field count");
    }
    auto where = [&](int c) {
      return "row " + std::to_string(row) + ", column " + std::to_string(c + 1);
    };
    auto d = [&](int c) -> std::optional<double> {
      if (cells[c].empty()) return std::nullopt;
      return parse_double(cells[c], where(c));
    };
    auto i = [&](int c) -> std::optional<int> {
      if (cells[c].empty()) return std::nullopt;
      return parse_int(cells[c], where(c));
    };
    ReportRow r;
    r.k = parse_int(cells[0], where(0));
    r.algorithm = cells[1];
    r.status = cells[2];
    r.cost = d(3);
    r.pof = d(4);
    r.gf_violation = d(5);
    r.ds_violation = i(6);
    r.socially_fair = d(7);
    r.num_centers = i(8);
    r.message = cells[9];
    report.rows.push_back(std::move(r));
  }
  return report;
}

std::string timing_json(const Timing& timing) {
  json rows = json::array();
  for (const auto& t : timing.rows) {
    rows.push_back({{"k", t.k}, {"algorithm", t.algorithm}, {"seconds", t.seconds}});
  }
  auto ratios = [](const std::vector<std::pair<int, std::optional<double>>>& v) {
    json out = json::array();
    for (const auto& [k, r] : v) out.push_back({{"k", k}, {"ratio", opt(r)}});
    return out;
  };
  json doc = json::object();
  doc["rows"] = std::move(rows);
  doc["gf_to_gfds_ratio"] = ratios(timing.gf_to_gfds_ratio);
  doc["ds_to_gfds_ratio"] = ratios(timing.ds_to_gfds_ratio);
  return doc.dump(2) + "\n";
}

void emit_report(const Report& report, const std::string& path, ReportFormat format) {
  write_file(path, format == ReportFormat::kCsv ? report_csv(report)
                                                : report_json(report));
}

Report parse_report(const std::string& path, ReportFormat format) {
  const auto text = read_file(path);
  return format == ReportFormat::kCsv ? parse_report_csv(text)
                                      : parse_report_json(text);
}

}  // namespace fairkc
