#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>
#include <thread>

#include "conesphere/errors.hpp"
#include "conesphere/volume.hpp"

namespace conesphere::cli {

namespace {

using nlohmann::json;

constexpr double kDegree = kPi / 180.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& text, const std::string& field) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InvalidInput("field '" + field + "' is not a number: '" + text + "'");
  }
  if (used != text.size()) throw InvalidInput("field '" + field + "' is not a number: '" + text + "'");
  return v;
}

std::uint64_t parse_count(const std::string& text, const std::string& field) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw InvalidInput("field '" + field + "' is not a nonnegative integer: '" + text + "'");
  return std::stoull(text);
}

Method method_from(const std::string& text) {
  const auto m = parse_method(text);
  if (!m) throw InvalidInput("unknown method '" + text + "'");
  return *m;
}

bool degrees_from(const std::string& unit) {
  if (unit == "degrees") return true;
  if (unit == "radians" || unit.empty()) return false;
  throw InvalidInput("angle_unit must be radians or degrees, got '" + unit + "'");
}

Vec3 vec_from(const json& j, const char* name) {
  if (!j.is_array() || j.size() != 3) throw InvalidInput(std::string("field '") + name + "' must be a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

double number_from(const json& obj, const char* name) {
  const auto it = obj.find(name);
  if (it == obj.end()) throw InvalidInput(std::string("missing field '") + name + "'");
  if (!it->is_number()) throw InvalidInput(std::string("field '") + name + "' must be a number");
  return it->get<double>();
}

QueryRecord record_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("record must be a JSON object");
  QueryRecord q;
  const bool has_scene = j.contains("S") || j.contains("C") || j.contains("a");
  const bool has_canonical = j.contains("d") || j.contains("b");
  if (has_scene && has_canonical) throw InvalidInput("record mixes scene and canonical geometry");
  if (has_scene) {
    SceneGeometry s;
    s.sphere_center = vec_from(j.at("S"), "S");
    s.apex = vec_from(j.at("C"), "C");
    s.axis = vec_from(j.at("a"), "a");
    s.R = number_from(j, "R");
    s.phi = number_from(j, "phi");
    q.scene = s;
  } else {
    q.canonical = CanonicalGeometry{number_from(j, "R"), number_from(j, "d"), number_from(j, "b"), number_from(j, "phi")};
  }
  if (j.contains("method")) q.method = method_from(j.at("method").get<std::string>());
  if (j.contains("angle_unit")) q.degrees = degrees_from(j.at("angle_unit").get<std::string>());
  if (j.contains("samples")) q.samples = j.at("samples").get<std::uint64_t>();
  if (j.contains("seed")) q.seed = j.at("seed").get<std::uint64_t>();
  return q;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

QueryRecord record_from_csv(const std::vector<std::string>& header, const std::vector<std::string>& cells) {
  if (cells.size() != header.size())
    throw InvalidInput("expected " + std::to_string(header.size()) + " fields, got " + std::to_string(cells.size()));
  std::map<std::string, std::string> row;
  for (std::size_t i = 0; i < header.size(); ++i) row[header[i]] = cells[i];
  const auto get = [&](const std::string& k) -> std::string {
    const auto it = row.find(k);
    if (it == row.end() || it->second.empty()) throw InvalidInput("missing field '" + k + "'");
    return it->second;
  };
  const auto has = [&](const std::string& k) { return row.count(k) && !row[k].empty(); };

  QueryRecord q;
  if (has("Sx")) {
    SceneGeometry s;
    s.sphere_center = {parse_double(get("Sx"), "Sx"), parse_double(get("Sy"), "Sy"), parse_double(get("Sz"), "Sz")};
    s.apex = {parse_double(get("Cx"), "Cx"), parse_double(get("Cy"), "Cy"), parse_double(get("Cz"), "Cz")};
    s.axis = {parse_double(get("ax"), "ax"), parse_double(get("ay"), "ay"), parse_double(get("az"), "az")};
    s.R = parse_double(get("R"), "R");
    s.phi = parse_double(get("phi"), "phi");
    q.scene = s;
  } else {
    q.canonical = CanonicalGeometry{parse_double(get("R"), "R"), parse_double(get("d"), "d"), parse_double(get("b"), "b"),
                                    parse_double(get("phi"), "phi")};
  }
  if (has("method")) q.method = method_from(row["method"]);
  if (has("angle_unit")) q.degrees = degrees_from(row["angle_unit"]);
  if (has("samples")) q.samples = parse_count(row["samples"], "samples");
  if (has("seed")) q.seed = parse_count(row["seed"], "seed");
  return q;
}

std::string regions_text(const std::vector<Region>& regions) {
  std::string out;
  for (const auto& r : regions) {
    if (!out.empty()) out += ';';
    out += r.name + '=' + num(r.volume);
  }
  return out;
}

Format format_for_path(const std::string& path, Format fallback) {
  const auto dot = path.rfind('.');
  if (dot == std::string::npos) return fallback;
  const std::string ext = path.substr(dot + 1);
  if (ext == "jsonl" || ext == "json" || ext == "ndjson") return Format::Jsonl;
  if (ext == "csv") return Format::Csv;
  return fallback;
}

struct Settings {
  VolumeOptions options;
  bool strict = false;
  bool degrees = false;
  unsigned threads = 1;
};

ResultRecord evaluate(std::size_t row, const QueryRecord& q, const Settings& s, std::uint64_t mc_seed, unsigned mc_threads) {
  ResultRecord rec;
  rec.row = row;
  QueryRecord local = q;
  local.degrees = q.degrees || s.degrees;
  try {
    rec.geom = resolve(local);
    VolumeOptions opt = s.options;
    if (q.method) opt.method = *q.method;
    if (q.samples) opt.mc.samples = *q.samples;
    opt.mc.seed = q.seed ? *q.seed : mc_seed;
    opt.mc.threads = mc_threads;
    rec.result = compute_volume(rec.geom, opt);
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  return rec;
}

bool needs_strict_failure(const ResultRecord& r, bool strict) { return strict && r.ok() && r.result.accuracy_warning; }

int run_batch(const std::string& in_path, const std::string& out_path, std::optional<Format> in_fmt,
              std::optional<Format> out_fmt, const Settings& s, std::ostream& out, std::ostream& err) {
  std::ifstream in(in_path);
  if (!in) {
    err << "error: cannot open " << in_path << "\n";
    return 2;
  }
  const Format input = in_fmt ? *in_fmt : format_for_path(in_path, Format::Csv);
  const std::vector<ParsedRow> rows = read_batch(in, input);

  std::vector<ResultRecord> results(rows.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(s.threads, static_cast<unsigned>(rows.size())));
  const unsigned mc_threads = workers > 1 ? 1 : s.threads;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < rows.size();) {
      if (rows[i].query) {
        results[i] = evaluate(i, *rows[i].query, s, derive_seed(s.options.mc.seed, i), mc_threads);
      } else {
        results[i].row = i;
        results[i].error = rows[i].error;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      err << "error: cannot write " << out_path << "\n";
      return 2;
    }
    sink = &file;
  }
  const Format output = out_fmt ? *out_fmt : format_for_path(out_path, Format::Csv);
  write_header(*sink, output);
  std::size_t failures = 0, fallbacks = 0, warnings = 0;
  std::map<std::string, std::size_t> cases;
  for (const auto& r : results) {
    write_record(*sink, r, output);
    if (!r.ok()) {
      ++failures;
      continue;
    }
    ++cases[std::string(to_string(r.result.label))];
    fallbacks += r.result.fallback ? 1 : 0;
    warnings += r.result.accuracy_warning ? 1 : 0;
  }
  err << "rows=" << results.size() << " ok=" << results.size() - failures << " errors=" << failures
      << " fallbacks=" << fallbacks << " accuracy_warnings=" << warnings;
  for (const auto& [label, n] : cases) err << ' ' << label << '=' << n;
  err << "\n";
  if (failures) return 1;
  if (s.strict && warnings) return 3;
  return 0;
}

int run_sweep(const std::string& axis, double from, double to, int steps, const CanonicalGeometry& base, bool crosscheck,
              Format fmt, const Settings& s, std::ostream& out, std::ostream& err) {
  if (steps < 2) {
    err << "error: --steps must be at least 2\n";
    return 2;
  }
  if (axis != "R" && axis != "d" && axis != "b" && axis != "phi") {
    err << "error: --sweep axis must be one of R, d, b, phi\n";
    return 2;
  }
  if (fmt == Format::Csv) {
    out << axis << ",volume,case,method";
    if (crosscheck) out << ",quadrature,rel_diff";
    out << "\n";
  }
  std::size_t skipped = 0;
  bool warned = false;
  for (int i = 0; i < steps; ++i) {
    double v = from + (to - from) * i / (steps - 1);
    if (s.degrees && axis == "phi") v *= kDegree;
    CanonicalGeometry g = base;
    (axis == "R" ? g.R : axis == "d" ? g.d : axis == "b" ? g.b : g.phi) = v;
    try {
      validate(g);
    } catch (const InvalidInput&) {
      ++skipped;
      continue;
    }
    VolumeResult r;
    try {
      r = compute_volume(g, s.options);
    } catch (const ConditioningError& e) {
      err << "error: " << axis << "=" << num(v) << ": " << e.what() << "\n";
      return 3;
    }
    warned = warned || r.accuracy_warning;
    const double shown = s.degrees && axis == "phi" ? v / kDegree : v;
    std::optional<double> quad;
    if (crosscheck) quad = volume_quadrature(g, s.options.quad).volume;
    if (fmt == Format::Csv) {
      out << num(shown) << ',' << num(r.volume) << ',' << to_string(r.label) << ',' << to_string(r.method);
      if (quad) out << ',' << num(*quad) << ',' << num(*quad != 0.0 ? (r.volume - *quad) / *quad : r.volume - *quad);
      out << "\n";
    } else {
      json j = {{axis, shown}, {"volume", r.volume}, {"case", to_string(r.label)}, {"method", to_string(r.method)}};
      if (quad) j["quadrature"] = *quad;
      out << j.dump() << "\n";
    }
  }
  if (skipped) err << "warning: " << skipped << " sweep points outside the parameter domain were skipped\n";
  return s.strict && warned ? 3 : 0;
}

}  // namespace

QueryRecord parse_json_record(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
  try {
    return record_from_json(j);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad field type: ") + e.what());
  }
}

std::vector<ParsedRow> read_batch(std::istream& in, Format f) {
  std::vector<ParsedRow> rows;
  std::vector<std::string> header;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (f == Format::Csv && header.empty()) {
      header = split(line, ',');
      continue;
    }
    ParsedRow row;
    try {
      row.query = f == Format::Csv ? record_from_csv(header, split(line, ',')) : parse_json_record(line);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

CanonicalGeometry resolve(const QueryRecord& q) {
  if (q.canonical.has_value() == q.scene.has_value()) throw InvalidInput("exactly one of canonical or scene geometry is required");
  const double unit = q.degrees ? kDegree : 1.0;
  if (q.scene) {
    SceneGeometry s = *q.scene;
    s.phi *= unit;
    return reduce_to_canonical(s);
  }
  CanonicalGeometry g = *q.canonical;
  g.phi *= unit;
  validate(g);
  return g;
}

void write_header(std::ostream& out, Format f) {
  if (f == Format::Csv) out << "row,R,d,b,phi,volume,case,method,error_estimate,fallback,accuracy_warning,regions,error\n";
}

void write_record(std::ostream& out, const ResultRecord& r, Format f) {
  if (f == Format::Csv) {
    if (!r.ok()) {
      std::string msg = r.error;
      std::replace(msg.begin(), msg.end(), ',', ';');
      std::replace(msg.begin(), msg.end(), '\n', ' ');
      out << r.row << ",,,,,,,,,,,," << msg << "\n";
      return;
    }
    const auto& v = r.result;
    out << r.row << ',' << num(r.geom.R) << ',' << num(r.geom.d) << ',' << num(r.geom.b) << ',' << num(r.geom.phi) << ','
        << num(v.volume) << ',' << to_string(v.label) << ',' << to_string(v.method) << ',' << num(v.error_estimate) << ','
        << (v.fallback ? "true" : "false") << ',' << (v.accuracy_warning ? "true" : "false") << ','
        << regions_text(v.regions) << ",\n";
    return;
  }
  json j;
  j["row"] = r.row;
  if (!r.ok()) {
    j["error"] = r.error;
  } else {
    const auto& v = r.result;
    j["R"] = r.geom.R;
    j["d"] = r.geom.d;
    j["b"] = r.geom.b;
    j["phi"] = r.geom.phi;
    j["volume"] = v.volume;
    j["case"] = to_string(v.label);
    j["method"] = to_string(v.method);
    j["error_estimate"] = v.error_estimate;
    j["fallback"] = v.fallback;
    j["accuracy_warning"] = v.accuracy_warning;
    j["regions"] = json::array();
    for (const auto& reg : v.regions) j["regions"].push_back({{"name", reg.name}, {"volume", reg.volume}});
  }
  out << j.dump() << "\n";
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Volume of the intersection of a solid cone and a solid sphere"};
  std::optional<double> R, d, b, phi;
  std::string scene_file, method = "auto", batch_in, batch_out, sweep_axis, format_name, input_format_name;
  std::optional<double> tol;
  std::uint64_t samples = 1'000'000, seed = 0x5eed;
  double from = 0.0, to = 0.0;
  int steps = 0;
  bool crosscheck = false, stratified = false;
  Settings s;
  app.add_option("--R", R, "sphere radius");
  app.add_option("--d", d, "signed axial distance; the sphere center sits at z = -d");
  app.add_option("--b", b, "impact parameter (center to axis distance)");
  app.add_option("--phi", phi, "cone half-aperture (radians unless --degrees)");
  app.add_option("--scene-file", scene_file, "JSON file with S, C, a, R, phi");
  app.add_option("--method", method, "auto|closed|elliptic|quadrature|montecarlo");
  app.add_option("--tol", tol, "relative tolerance for quadrature");
  app.add_option("--samples", samples, "Monte Carlo sample count");
  app.add_option("--seed", seed, "Monte Carlo base seed");
  app.add_flag("--stratified", stratified, "octant-stratified Monte Carlo");
  app.add_flag("--degrees", s.degrees, "angles are given in degrees");
  app.add_option("--batch", batch_in, "batch input file (.csv or .jsonl)");
  app.add_option("--out", batch_out, "batch output file (default stdout)");
  app.add_option("--input-format", input_format_name, "override batch input format: csv|jsonl");
  app.add_option("--sweep", sweep_axis, "sweep one of R, d, b, phi");
  app.add_option("--from", from, "sweep start");
  app.add_option("--to", to, "sweep end");
  app.add_option("--steps", steps, "sweep points");
  app.add_flag("--crosscheck", crosscheck, "add quadrature columns to sweeps");
  app.add_flag("--strict", s.strict, "exit 3 when an accuracy target is missed");
  app.add_option("--format", format_name, "output format: csv|jsonl");
  app.add_option("--threads", s.threads, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const auto format_of = [&](const std::string& name) -> std::optional<Format> {
    if (name.empty()) return std::nullopt;
    if (name == "csv") return Format::Csv;
    if (name == "jsonl") return Format::Jsonl;
    throw InvalidInput("format must be csv or jsonl, got '" + name + "'");
  };

  try {
    s.options.method = method_from(method);
    if (tol) {
      if (!(*tol > 0.0)) throw InvalidInput("--tol must be positive");
      s.options.quad.rel_tol = *tol;
    }
    s.options.mc.samples = samples;
    s.options.mc.seed = seed;
    s.options.mc.stratified = stratified;
    s.options.mc.threads = s.threads;
    const auto out_fmt = format_of(format_name);
    const auto in_fmt = format_of(input_format_name);

    const bool canonical = R || d || b || phi;
    if (!batch_in.empty()) {
      if (canonical || !scene_file.empty() || !sweep_axis.empty())
        throw InvalidInput("--batch cannot be combined with a single geometry or --sweep");
      return run_batch(batch_in, batch_out, in_fmt, out_fmt, s, out, err);
    }
    if (!sweep_axis.empty()) {
      if (!scene_file.empty()) throw InvalidInput("--sweep takes its base geometry from --R --d --b --phi");
      CanonicalGeometry base{R.value_or(1.0), d.value_or(0.0), b.value_or(0.0), phi.value_or(kPi / 4.0)};
      if (s.degrees && phi) base.phi *= kDegree;
      return run_sweep(sweep_axis, from, to, steps, base, crosscheck, out_fmt.value_or(Format::Csv), s, out, err);
    }

    QueryRecord q;
    if (!scene_file.empty()) {
      if (canonical) throw InvalidInput("--scene-file conflicts with --R/--d/--b/--phi");
      std::ifstream f(scene_file);
      if (!f) throw InvalidInput("cannot open " + scene_file);
      std::stringstream buf;
      buf << f.rdbuf();
      q = parse_json_record(buf.str());
    } else {
      if (!R || !d || !b || !phi) throw InvalidInput("--R, --d, --b and --phi are all required");
      q.canonical = CanonicalGeometry{*R, *d, *b, *phi};
    }
    q.degrees = s.degrees;
    if (!q.method) q.method = s.options.method;

    ResultRecord rec;
    rec.geom = resolve(q);
    rec.result = compute_volume(rec.geom, [&] {
      VolumeOptions o = s.options;
      o.method = *q.method;
      if (q.samples) o.mc.samples = *q.samples;
      if (q.seed) o.mc.seed = *q.seed;
      return o;
    }());
    const Format fmt = out_fmt.value_or(Format::Csv);
    write_header(out, fmt);
    write_record(out, rec, fmt);
    return needs_strict_failure(rec, s.strict) ? 3 : 0;
  } catch (const ConditioningError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace conesphere::cli
