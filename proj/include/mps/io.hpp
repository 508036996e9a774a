#pragma once

#include <mps/graph.hpp>
#include <mps/rational.hpp>
#include <mps/solver.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace mps {

class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class InstanceFormat { EdgeList, Gml };

inline InstanceFormat parse_format(const std::string& s) {
  if (s == "edge-list" || s == "edgelist" || s == "txt") return InstanceFormat::EdgeList;
  if (s == "gml") return InstanceFormat::Gml;
  throw InstanceError("unknown instance format '" + s + "'");
}

inline InstanceFormat format_from_path(const std::filesystem::path& p) {
  return p.extension() == ".gml" ? InstanceFormat::Gml : InstanceFormat::EdgeList;
}

// ---------------------------------------------------------------------------
// Edge list: "n m", then m lines "u v [w]"; '#' starts a comment.

inline Graph read_edge_list(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
  }
  if (lines.empty()) throw InstanceError("edge list: missing 'n m' header");
  std::istringstream head(lines[0]);
  long n = -1, m = -1;
  std::string extra;
  if (!(head >> n >> m) || (head >> extra) || n < 0 || m < 0) throw InstanceError("edge list: bad header '" + lines[0] + "'");
  if (static_cast<long>(lines.size()) - 1 != m)
    throw InstanceError("edge list: header announces " + std::to_string(m) + " edges, found " +
                        std::to_string(lines.size() - 1));
  Graph g(static_cast<int>(n));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream row(lines[i]);
    long u = -1, v = -1;
    std::string w;
    if (!(row >> u >> v)) throw InstanceError("edge list: bad edge line '" + lines[i] + "'");
    Rational weight = 1;
    if (row >> w) {
      try {
        weight = parse_rational(w);
      } catch (const std::invalid_argument& e) {
        throw InstanceError("edge list: " + std::string(e.what()));
      }
    }
    if (row >> extra) throw InstanceError("edge list: trailing tokens in '" + lines[i] + "'");
    try {
      g.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v), weight);
    } catch (const std::invalid_argument& e) {
      throw InstanceError("edge list: " + std::string(e.what()));
    }
  }
  return g;
}

/// Weights are written only when some edge has weight != 1.
inline void write_edge_list(std::ostream& out, const Graph& g) {
  bool weighted = std::any_of(g.edges().begin(), g.edges().end(), [](const Edge& e) { return e.weight != 1; });
  out << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (const auto& e : g.edges()) {
    out << e.u << ' ' << e.v;
    if (weighted) out << ' ' << e.weight.get_str();
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// GML subset: graph [ node [ id .. ] edge [ source .. target .. weight .. ] ].
// Unknown keys are skipped together with their value or bracketed list.

namespace detail {

struct GmlTokens {
  std::vector<std::string> toks;
  std::size_t pos = 0;

  bool done() const { return pos >= toks.size(); }
  const std::string& peek() const {
    if (done()) throw InstanceError("gml: unexpected end of input");
    return toks[pos];
  }
  std::string next() {
    const std::string& t = peek();
    ++pos;
    return t;
  }
};

inline GmlTokens tokenize_gml(std::istream& in) {
  GmlTokens t;
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '[' || c == ']') {
      t.toks.emplace_back(1, c);
      ++i;
    } else if (c == '"') {
      std::size_t j = text.find('"', i + 1);
      if (j == std::string::npos) throw InstanceError("gml: unterminated string");
      t.toks.push_back(text.substr(i, j - i + 1));
      i = j + 1;
    } else {
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != '[' && text[j] != ']') ++j;
      t.toks.push_back(text.substr(i, j - i));
      i = j;
    }
  }
  return t;
}

inline void skip_value(GmlTokens& t) {
  if (t.next() != "[") return;
  int depth = 1;
  while (depth > 0) {
    std::string s = t.next();
    if (s == "[") ++depth;
    if (s == "]") --depth;
  }
}

inline std::string unquote(const std::string& s) {
  return s.size() >= 2 && s.front() == '"' && s.back() == '"' ? s.substr(1, s.size() - 2) : s;
}

inline std::map<std::string, std::string> read_gml_record(GmlTokens& t) {
  if (t.next() != "[") throw InstanceError("gml: expected '['");
  std::map<std::string, std::string> rec;
  while (t.peek() != "]") {
    std::string key = t.next();
    if (t.peek() == "[") {
      skip_value(t);
      continue;
    }
    rec[key] = unquote(t.next());
  }
  t.next();
  return rec;
}

inline long gml_int(const std::map<std::string, std::string>& rec, const std::string& key) {
  auto it = rec.find(key);
  if (it == rec.end()) throw InstanceError("gml: missing '" + key + "'");
  try {
    std::size_t used = 0;
    long v = std::stol(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw InstanceError("gml: '" + key + "' is not an integer: " + it->second);
  }
}

}  // namespace detail

/// Node ids are mapped to 0..n-1 in order of appearance.
inline Graph read_gml(std::istream& in) {
  auto t = detail::tokenize_gml(in);
  while (!t.done() && t.peek() != "graph") {
    t.next();
    detail::skip_value(t);
  }
  if (t.done()) throw InstanceError("gml: no 'graph' block");
  t.next();
  if (t.next() != "[") throw InstanceError("gml: expected '[' after graph");
  std::unordered_map<long, NodeId> ids;
  std::vector<std::map<std::string, std::string>> edges;
  while (t.peek() != "]") {
    std::string key = t.next();
    if (key == "node") {
      long id = detail::gml_int(detail::read_gml_record(t), "id");
      if (!ids.emplace(id, static_cast<NodeId>(ids.size())).second) throw InstanceError("gml: duplicate node id " + std::to_string(id));
    } else if (key == "edge") {
      edges.push_back(detail::read_gml_record(t));
    } else {
      detail::skip_value(t);
    }
  }
  Graph g(static_cast<int>(ids.size()));
  for (const auto& rec : edges) {
    long s = detail::gml_int(rec, "source"), d = detail::gml_int(rec, "target");
    if (!ids.count(s) || !ids.count(d)) throw InstanceError("gml: edge refers to an unknown node");
    Rational w = 1;
    if (auto it = rec.find("weight"); it != rec.end()) {
      try {
        w = parse_rational(it->second);
      } catch (const std::invalid_argument& e) {
        throw InstanceError("gml: " + std::string(e.what()));
      }
    }
    try {
      g.add_edge(ids[s], ids[d], w);
    } catch (const std::invalid_argument& e) {
      throw InstanceError("gml: " + std::string(e.what()));
    }
  }
  return g;
}

inline void write_gml(std::ostream& out, const Graph& g) {
  out << "graph [\n  directed 0\n";
  for (NodeId v = 0; v < g.num_nodes(); ++v) out << "  node [ id " << v << " ]\n";
  for (const auto& e : g.edges()) {
    out << "  edge [ source " << e.u << " target " << e.v;
    if (e.weight != 1) out << " weight \"" << e.weight.get_str() << '"';
    out << " ]\n";
  }
  out << "]\n";
}

inline Graph read_instance(std::istream& in, InstanceFormat f) {
  return f == InstanceFormat::Gml ? read_gml(in) : read_edge_list(in);
}

inline void write_instance(std::ostream& out, const Graph& g, InstanceFormat f) {
  if (f == InstanceFormat::Gml) write_gml(out, g);
  else write_edge_list(out, g);
}

inline Graph read_instance_file(const std::filesystem::path& p, std::optional<InstanceFormat> f = {}) {
  std::ifstream in(p);
  if (!in) throw InstanceError("cannot open '" + p.string() + "'");
  return read_instance(in, f.value_or(format_from_path(p)));
}

// ---------------------------------------------------------------------------
// Run records.

/// Separated row classes reported per run, in CSV column order.
inline const std::vector<RowClass>& reported_cut_classes() {
  static const std::vector<RowClass> v = {RowClass::Kuratowski,     RowClass::GeneralizedEuler, RowClass::CycleEdge,
                                          RowClass::TwoCyclesPath,  RowClass::KuratowskiCycle,  RowClass::CycleClique};
  return v;
}

struct RunRecord {
  std::string instance;
  std::string variant;
  std::string status;
  std::string skewness;  ///< exact rational as text
  double root_bound = 0;
  double dual_bound = 0;
  double runtime = 0;
  long nodes = 0;
  std::map<std::string, int> cuts;
  int max_cycle_length = 0;
  std::size_t num_cycles = 0;
  std::uint64_t seed = 0;

  bool solved() const { return status == to_string(SolveStatus::Optimal); }
};

inline RunRecord make_record(const std::string& instance, const std::string& variant, const SolveResult& r) {
  RunRecord rec;
  rec.instance = instance;
  rec.variant = variant;
  rec.status = to_string(r.status);
  rec.skewness = r.skewness.get_str();
  rec.root_bound = r.root_bound;
  rec.dual_bound = r.dual_bound;
  rec.runtime = r.seconds;
  rec.nodes = r.nodes;
  for (RowClass c : reported_cut_classes()) {
    auto it = r.cuts.find(c);
    rec.cuts[to_string(c)] = it == r.cuts.end() ? 0 : it->second;
  }
  rec.max_cycle_length = r.max_cycle_length;
  rec.num_cycles = r.num_cycles;
  rec.seed = r.seed;
  return rec;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline std::string run_csv_header() {
  std::string h = "instance,variant,status,skewness,root_bound,dual_bound,runtime,nodes";
  for (RowClass c : reported_cut_classes()) h += std::string(",cuts_") + to_string(c);
  return h + ",max_cycle_length,num_cycles,seed";
}

inline std::string to_csv(const RunRecord& r) {
  std::ostringstream os;
  os << std::setprecision(10);
  os << csv_escape(r.instance) << ',' << csv_escape(r.variant) << ',' << r.status << ',' << r.skewness << ','
     << r.root_bound << ',' << r.dual_bound << ',' << r.runtime << ',' << r.nodes;
  for (RowClass c : reported_cut_classes()) {
    auto it = r.cuts.find(to_string(c));
    os << ',' << (it == r.cuts.end() ? 0 : it->second);
  }
  os << ',' << r.max_cycle_length << ',' << r.num_cycles << ',' << r.seed;
  return os.str();
}

inline nlohmann::json to_json(const RunRecord& r) {
  return {{"instance", r.instance},         {"variant", r.variant},       {"status", r.status},
          {"skewness", r.skewness},         {"root_bound", r.root_bound}, {"dual_bound", r.dual_bound},
          {"runtime", r.runtime},           {"nodes", r.nodes},           {"cuts", r.cuts},
          {"max_cycle_length", r.max_cycle_length}, {"num_cycles", r.num_cycles}, {"seed", r.seed}};
}

// ---------------------------------------------------------------------------
// Bench summary: one row per variant.

struct VariantSummary {
  std::string variant;
  int runs = 0;
  int solved = 0;
  double average_runtime = 0;  ///< unsolved runs count at the time limit

  double success_rate() const { return runs == 0 ? 0.0 : static_cast<double>(solved) / runs; }
};

struct BenchSummary {
  std::vector<VariantSummary> variants;
  /// Instances whose optimal runs disagree on the skewness across variants.
  std::vector<std::string> inconsistent_instances;
};

inline BenchSummary summarize(const std::vector<RunRecord>& records, double time_limit,
                              const std::vector<std::string>& variant_order = {}) {
  BenchSummary out;
  std::vector<std::string> order = variant_order;
  for (const auto& r : records)
    if (std::find(order.begin(), order.end(), r.variant) == order.end()) order.push_back(r.variant);
  for (const auto& v : order) {
    VariantSummary s{v};
    double total = 0;
    for (const auto& r : records) {
      if (r.variant != v) continue;
      ++s.runs;
      if (r.solved()) {
        ++s.solved;
        total += r.runtime;
      } else {
        total += time_limit;
      }
    }
    if (s.runs == 0) continue;
    s.average_runtime = total / s.runs;
    out.variants.push_back(s);
  }
  std::map<std::string, std::string> value;
  for (const auto& r : records) {
    if (!r.solved()) continue;
    auto [it, fresh] = value.emplace(r.instance, r.skewness);
    if (!fresh && it->second != r.skewness &&
        std::find(out.inconsistent_instances.begin(), out.inconsistent_instances.end(), r.instance) ==
            out.inconsistent_instances.end())
      out.inconsistent_instances.push_back(r.instance);
  }
  return out;
}

inline std::string summary_csv_header() { return "variant,runs,solved,success_rate,average_runtime"; }

inline void write_summary_csv(std::ostream& out, const BenchSummary& s) {
  out << summary_csv_header() << '\n' << std::setprecision(10);
  for (const auto& v : s.variants)
    out << csv_escape(v.variant) << ',' << v.runs << ',' << v.solved << ',' << v.success_rate() << ','
        << v.average_runtime << '\n';
}

}  // namespace mps
