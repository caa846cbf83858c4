#pragma once

#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <sstream>

#include <json.hpp>

#include "gwrecon/localization.hpp"
#include "gwrecon/quantum.hpp"
#include "gwrecon/schubert.hpp"

namespace gwrecon {

/// Canonical identifier of a primary invariant: target, degree, sorted
/// insertions. Symmetric by construction.
struct InvariantKey {
  Grassmannian target;
  int degree = 0;
  std::vector<Partition> insertions;  // sorted descending

  InvariantKey(Grassmannian g, int d, std::vector<Partition> ins)
      : target(g), degree(d), insertions(std::move(ins)) {
    if (d < 0) throw std::domain_error("InvariantKey: negative degree");
    for (const auto& p : insertions)
      if (!g.in_box(p)) throw std::domain_error("InvariantKey: insertion outside box");
    std::sort(insertions.rbegin(), insertions.rend());
  }

  int n() const { return static_cast<int>(insertions.size()); }
  int total_codim() const {
    int s = 0;
    for (const auto& p : insertions) s += p.weight();
    return s;
  }

  auto tie() const { return std::tie(target.k, target.N, degree, insertions); }
  bool operator==(const InvariantKey& o) const { return tie() == o.tie(); }
  bool operator<(const InvariantKey& o) const { return tie() < o.tie(); }

  std::string str() const {
    std::ostringstream os;
    os << "g:" << target.k << ',' << target.N << " d=" << degree << " <";
    for (size_t i = 0; i < insertions.size(); ++i) {
      if (i) os << '|';
      os << insertions[i].str();
    }
    os << '>';
    return os.str();
  }
};

/// Vanishing unless total insertion codimension matches the moduli dimension.
inline bool expected_dim_gate(const InvariantKey& key) {
  return key.total_codim() ==
         key.target.dim() + key.degree * key.target.fano_index() + key.n() - 3;
}

/// Memoized invariant values; rebinding a key to a different value is fatal.
class InvariantTable {
 public:
  std::optional<Rat> lookup(const InvariantKey& key) const {
    std::shared_lock lock(mutex_);
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second.first;
  }

  void store(const InvariantKey& key, const Rat& value, const std::string& provenance) {
    std::unique_lock lock(mutex_);
    auto it = values_.find(key);
    if (it != values_.end()) {
      if (it->second.first != value)
        throw integrity_error("InvariantTable: conflicting values for " + key.str() + ": " +
                              rat_to_string(it->second.first) + " vs " + rat_to_string(value));
      return;
    }
    values_.emplace(key, std::make_pair(value, provenance));
  }

  size_t size() const {
    std::shared_lock lock(mutex_);
    return values_.size();
  }

  nlohmann::json to_json() const {
    std::shared_lock lock(mutex_);
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [key, val] : values_) {
      nlohmann::json ins = nlohmann::json::array();
      for (const auto& p : key.insertions) ins.push_back(p.str());
      entries.push_back({{"target", "g:" + std::to_string(key.target.k) + "," +
                                        std::to_string(key.target.N)},
                         {"degree", key.degree},
                         {"insertions", ins},
                         {"value", rat_to_string(val.first)},
                         {"provenance", val.second}});
    }
    return {{"schema", schema_version()}, {"entries", entries}};
  }

  static constexpr const char* schema_version() { return "gwrecon-cache-1"; }

  void load_json(const nlohmann::json& j) {
    if (!j.contains("schema") || j["schema"] != schema_version())
      throw std::domain_error("InvariantTable: unknown cache schema");
    for (const auto& e : j["entries"]) {
      const std::string t = e["target"];
      if (t.rfind("g:", 0) != 0) throw std::domain_error("InvariantTable: bad target " + t);
      auto comma = t.find(',');
      Grassmannian g{std::stoi(t.substr(2, comma - 2)), std::stoi(t.substr(comma + 1))};
      std::vector<Partition> ins;
      for (const auto& p : e["insertions"]) ins.push_back(Partition::parse(p));
      store(InvariantKey(g, e["degree"], std::move(ins)), rat_from_string(e["value"]),
            e.value("provenance", "cache"));
    }
  }

  void save_file(const std::string& path) const {
    const std::string tmp = path + ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) throw std::runtime_error("InvariantTable: cannot write " + tmp);
      out << to_json().dump(1) << '\n';
    }
    std::filesystem::rename(tmp, path);
  }

  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("InvariantTable: cannot read " + path);
    nlohmann::json j;
    in >> j;
    load_json(j);
  }

 private:
  mutable std::shared_mutex mutex_;
  std::map<InvariantKey, std::pair<Rat, std::string>> values_;
};

/// Localization-backed evaluator with a one-time certification per target:
/// the degree-zero layer must match classical integration and every
/// three-point key must match the quantum product.
class Oracle {
 public:
  explicit Oracle(std::shared_ptr<InvariantTable> table = nullptr)
      : table_(table ? std::move(table) : std::make_shared<InvariantTable>()) {}

  Rat evaluate(const InvariantKey& key) {
    check_supported(key);
    if (!expected_dim_gate(key)) return 0;
    if (auto hit = table_->lookup(key)) return *hit;
    certify(key.target);
    Rat value = raw_evaluate(key);
    table_->store(key, value, "oracle");
    return value;
  }

  InvariantTable& table() { return *table_; }
  std::shared_ptr<InvariantTable> table_ptr() { return table_; }

 private:
  static void check_supported(const InvariantKey& key) {
    const auto g = key.target;
    const bool grass = g.k == 2 && g.N <= 6;
    const bool proj = g.k == 1 && g.N <= 4;
    if (!grass && !proj)
      throw unsupported_error("oracle: target out of range: " + key.str());
    if (key.n() > 8) throw resource_limit_error("oracle: too many insertions");
    if (key.degree > 3) throw resource_limit_error("oracle: degree exceeds bound 3");
  }

  Rat raw_evaluate(const InvariantKey& key) const {
    if (key.degree == 0) {
      // Classical: nonzero only for three insertions.
      if (key.n() != 3) return 0;
      CohClass prod = CohClass::unit(key.target);
      for (const auto& p : key.insertions)
        prod = product(prod, CohClass::basis_class(key.target, p));
      return integrate(prod);
    }
    if (key.n() == 0) return 0;
    return localization::evaluate(key.target, key.degree, key.insertions);
  }

  void certify(Grassmannian g) {
    {
      std::lock_guard lock(cert_mutex_);
      if (certified_.count(g)) return;
    }
    // Degree-zero layer vs classical integration on all admissible triples.
    const auto basis = g.full_basis();
    for (const auto& a : basis)
      for (const auto& b : basis)
        for (const auto& c : basis) {
          if (a.weight() + b.weight() + c.weight() != g.dim()) continue;
          CohClass prod = product(product(g, a, b), CohClass::basis_class(g, c));
          InvariantKey key(g, 0, {a, b, c});
          if (raw_evaluate(key) != integrate(prod))
            throw integrity_error("oracle certification: degree-zero mismatch at " + key.str());
        }
    // Three-point keys vs the quantum product (k = 2 targets).
    if (g.k == 2) {
      for (const auto& a : basis)
        for (const auto& b : basis)
          for (const auto& c : basis) {
            const int excess = a.weight() + b.weight() + c.weight() - g.dim();
            if (excess <= 0 || excess % g.N != 0) continue;
            const int d = excess / g.N;
            if (d > 3) continue;
            InvariantKey key(g, d, {a, b, c});
            const Rat expected = quantum_3pt_invariant(g, a, b, c, d);
            if (raw_evaluate(key) != expected)
              throw integrity_error("oracle certification: three-point mismatch at " +
                                    key.str());
          }
    }
    std::lock_guard lock(cert_mutex_);
    certified_.insert(g);
  }

  std::shared_ptr<InvariantTable> table_;
  std::mutex cert_mutex_;
  std::set<Grassmannian> certified_;
};

/// Shared process-wide oracle.
inline Oracle& global_oracle() {
  static Oracle oracle;
  return oracle;
}

inline Rat oracle_eval(const InvariantKey& key) { return global_oracle().evaluate(key); }

}  // namespace gwrecon
