#pragma once

#include <mps/model.hpp>

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace mps {

/// Parses whitespace-separated variant flags such as "c10 t0 i w0".
/// "ε" or "eps" (or an empty string) selects the plain Kuratowski model.
/// "D{n}" fixes the maximum cycle length instead of deriving it from c{r}.
inline VariantConfig parse_variant(std::string_view text) {
  VariantConfig cfg;
  std::istringstream in{std::string(text)};
  std::string tok;
  std::vector<std::string> seen;
  bool base_only = false;
  auto positive_int = [](std::string_view digits, const std::string& tok) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size())
      throw VariantError("unknown variant token '" + tok + "'");
    return value;
  };
  while (in >> tok) {
    std::string family = tok.substr(0, 1);
    if (tok == "t0" || tok == "t1" || tok == "w0" || tok == "w1") family = tok.substr(0, 1);
    else if (tok == "ε" || tok == "eps") family = "eps";
    for (const auto& f : seen)
      if (f == family) throw VariantError("repeated variant token '" + tok + "'");
    seen.push_back(family);

    if (family == "eps") base_only = true;
    else if (tok == "e") cfg.generalized_euler = true;
    else if (tok[0] == 'c' && tok.size() > 1) cfg.cycle_factor = positive_int(std::string_view(tok).substr(1), tok);
    else if (tok[0] == 'D' && tok.size() > 1) cfg.fixed_max_cycle_length = positive_int(std::string_view(tok).substr(1), tok);
    else if (tok == "t0") cfg.pseudo_tree = PseudoTree::NoPropagation;
    else if (tok == "t1") cfg.pseudo_tree = PseudoTree::Propagation;
    else if (tok == "i") cfg.integral_cycles = true;
    else if (tok == "s") cfg.cycle_edge = true;
    else if (tok == "w0") cfg.two_cycles_path = TwoCyclesPath::Combined;
    else if (tok == "w1") cfg.two_cycles_path = TwoCyclesPath::Separate;
    else if (tok == "k") cfg.kuratowski_cycle = true;
    else if (tok == "q") cfg.cycle_clique = true;
    else throw VariantError("unknown variant token '" + tok + "'");
  }
  if (base_only && seen.size() > 1) throw VariantError("'ε' cannot be combined with other flags");
  cfg.validate();
  return cfg;
}

/// Canonical flag string; parse_variant(format_variant(c)) == c.
inline std::string format_variant(const VariantConfig& cfg) {
  std::vector<std::string> toks;
  if (cfg.generalized_euler) toks.push_back("e");
  if (cfg.cycle_factor) toks.push_back("c" + std::to_string(*cfg.cycle_factor));
  if (cfg.fixed_max_cycle_length) toks.push_back("D" + std::to_string(*cfg.fixed_max_cycle_length));
  if (cfg.pseudo_tree == PseudoTree::NoPropagation) toks.push_back("t0");
  if (cfg.pseudo_tree == PseudoTree::Propagation) toks.push_back("t1");
  if (cfg.integral_cycles) toks.push_back("i");
  if (cfg.cycle_edge) toks.push_back("s");
  if (cfg.two_cycles_path == TwoCyclesPath::Combined) toks.push_back("w0");
  if (cfg.two_cycles_path == TwoCyclesPath::Separate) toks.push_back("w1");
  if (cfg.kuratowski_cycle) toks.push_back("k");
  if (cfg.cycle_clique) toks.push_back("q");
  if (toks.empty()) return "ε";
  std::string out = toks[0];
  for (std::size_t i = 1; i < toks.size(); ++i) out += " " + toks[i];
  return out;
}

/// The variant strings of the experimental comparison table.
inline const std::vector<std::string>& table_variants() {
  static const std::vector<std::string> v = {
      "ε", "e", "c5", "c10", "c20",
      "c10 i", "c10 s", "c10 t0", "c10 t1", "c10 w0", "c10 w1", "c10 k", "c10 q",
      "c10 t0 i", "c10 t0 s", "c10 t0 w0", "c10 t0 w1", "c10 t0 k", "c10 t0 q",
      "c10 t1 i", "c10 t1 s", "c10 t1 w0", "c10 t1 w1", "c10 t1 k", "c10 t1 q",
      "c10 t0 i s", "c10 t0 s w0", "c10 t0 s w1", "c10 t0 s k", "c10 t0 s q", "c10 t0 i w0", "c10 t0 i s w0"};
  return v;
}

}  // namespace mps
