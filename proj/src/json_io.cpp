#include "gpt/json_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace gpt::io {

namespace {

const json& require_field(const json& j, const char* key, const std::string& path) {
  const auto it = j.find(key);
  if (it == j.end()) throw ValidationError("missing field '" + path + key + "'");
  return *it;
}

Rat rat_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw ValidationError("field '" + path + "' must be a [numerator, denominator] integer pair");
  const long long num = j[0].get<long long>();
  const long long den = j[1].get<long long>();
  if (den <= 0) throw ValidationError("field '" + path + "' has a non-positive denominator");
  return Rat(BigInt(num), BigInt(den));
}

std::vector<Rat> table_from_json(const json& j, const std::string& path, size_t expected) {
  if (!j.is_array()) throw ValidationError("field '" + path + "' must be an array");
  if (j.size() != expected)
    throw ValidationError("field '" + path + "' has " + std::to_string(j.size()) + " entries, expected " +
                          std::to_string(expected));
  std::vector<Rat> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) out.push_back(rat_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

json rat_to_json(const Rat& r) {
  return json::array({numerator(r).convert_to<long long>(), denominator(r).convert_to<long long>()});
}

}  // namespace

AnyState state_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("state: top-level JSON value must be an object");
  const std::string theory = require_field(j, "theory", "").get<std::string>();
  const json& sig = require_field(j, "signature", "");
  if (theory == "classical") {
    const int d = require_field(sig, "d", "signature.").get<int>();
    if (d < 1) throw ValidationError("field 'signature.d' must be >= 1");
    return classical::State::validated(table_from_json(require_field(j, "table", ""), "table", d));
  }
  if (theory == "boxworld") {
    const json& parts = require_field(sig, "parts", "signature.");
    if (!parts.is_array() || parts.empty())
      throw ValidationError("field 'signature.parts' must be a non-empty array");
    box::Signature bsig;
    for (size_t i = 0; i < parts.size(); ++i) {
      const std::string path = "signature.parts[" + std::to_string(i) + "].";
      bsig.parts.push_back(box::Part{require_field(parts[i], "inputs", path).get<int>(),
                                     require_field(parts[i], "outputs", path).get<int>()});
    }
    bsig.validate();
    auto table = table_from_json(require_field(j, "table", ""), "table", bsig.table_size());
    return box::State::validated(std::move(bsig), std::move(table));
  }
  if (theory == "quantum") {
    const int d = require_field(sig, "d", "signature.").get<int>();
    if (d < 1) throw ValidationError("field 'signature.d' must be >= 1");
    const json& m = require_field(j, "matrix", "");
    if (!m.is_array() || m.size() != static_cast<size_t>(d) * d)
      throw ValidationError("field 'matrix' must have d*d [re,im] entries");
    quantum::Mat rho(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        const json& e = m[static_cast<size_t>(r) * d + c];
        if (!e.is_array() || e.size() != 2)
          throw ValidationError("field 'matrix[" + std::to_string(r * d + c) + "]' must be an [re, im] pair");
        rho(r, c) = std::complex<double>(e[0].get<double>(), e[1].get<double>());
      }
    return quantum::Density::validated(rho);
  }
  throw ValidationError("field 'theory' must be classical, quantum or boxworld");
}

json state_to_json(const AnyState& s) {
  json j;
  if (const auto* c = std::get_if<classical::State>(&s)) {
    j["theory"] = "classical";
    j["signature"] = {{"d", c->size()}};
    json table = json::array();
    for (const Rat& x : c->p) table.push_back(rat_to_json(x));
    j["table"] = table;
    return j;
  }
  if (const auto* b = std::get_if<box::State>(&s)) {
    j["theory"] = "boxworld";
    json parts = json::array();
    for (const box::Part& p : b->sig.parts) parts.push_back({{"inputs", p.inputs}, {"outputs", p.outputs}});
    j["signature"] = {{"parts", parts}};
    json table = json::array();
    for (const Rat& x : b->table) table.push_back(rat_to_json(x));
    j["table"] = table;
    return j;
  }
  const auto& q = std::get<quantum::Density>(s);
  j["theory"] = "quantum";
  j["signature"] = {{"d", q.dim()}};
  json m = json::array();
  for (int r = 0; r < q.dim(); ++r)
    for (int c = 0; c < q.dim(); ++c) m.push_back(json::array({q.rho(r, c).real(), q.rho(r, c).imag()}));
  j["matrix"] = m;
  return j;
}

AnyState load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open state file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed JSON in '" + path + "': " + e.what());
  }
  return state_from_json(j);
}

void save_state(const std::string& path, const AnyState& s) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write state file '" + path + "'");
  out << state_to_json(s).dump(2) << "\n";
}

json report_to_json(const std::string& quantity, const entropy::Report& r) {
  json j;
  j["quantity"] = quantity;
  j["value_bits"] = r.value_bits;
  j["witness"] = r.witness;
  j["exact"] = r.exact;
  if (r.upper_bound_only) j["upper_bound_only"] = true;
  return j;
}

std::string format_bits(double value) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(10) << value;
  return os.str();
}

}  // namespace gpt::io
