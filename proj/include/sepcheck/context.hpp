#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sepcheck/mode.hpp"

namespace sepcheck {

// Raised when an operation is called outside its documented domain.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Variable -> mode assignment. Variables missing from the map are read as Ind.
class ModeContext {
 public:
  ModeContext() = default;
  ModeContext(std::initializer_list<std::pair<const std::string, Mode>> init) : modes_(init) {}

  Mode get(const std::string& var) const {
    auto it = modes_.find(var);
    return it == modes_.end() ? Mode::Ind : it->second;
  }

  Mode at(const std::string& var) const {
    auto it = modes_.find(var);
    if (it == modes_.end()) throw PreconditionError("variable '" + var + "' not in context");
    return it->second;
  }

  bool contains(const std::string& var) const { return modes_.contains(var); }
  void set(const std::string& var, Mode m) { modes_[var] = m; }
  void erase(const std::string& var) { modes_.erase(var); }

  // Raise the entry for `var` to at least `m`.
  void raise(const std::string& var, Mode m) {
    auto [it, inserted] = modes_.try_emplace(var, m);
    if (!inserted) it->second = max(it->second, m);
  }

  std::set<std::string> domain() const {
    std::set<std::string> out;
    for (const auto& [v, _] : modes_) out.insert(v);
    return out;
  }

  // Same entries, restricted to (and completed with Ind over) `vars`.
  ModeContext over(const std::vector<std::string>& vars) const {
    ModeContext out;
    for (const auto& v : vars) out.set(v, get(v));
    return out;
  }
  ModeContext over(const std::set<std::string>& vars) const {
    return over(std::vector<std::string>(vars.begin(), vars.end()));
  }

  std::size_t size() const { return modes_.size(); }
  bool empty() const { return modes_.empty(); }
  auto begin() const { return modes_.begin(); }
  auto end() const { return modes_.end(); }

  friend bool operator==(const ModeContext&, const ModeContext&) = default;

 private:
  std::map<std::string, Mode> modes_;
};

inline bool context_le(const ModeContext& g1, const ModeContext& g2) {
  if (g1.domain() != g2.domain()) throw PreconditionError("context_le: domains differ");
  for (const auto& [v, m] : g1) {
    if (m > g2.at(v)) return false;
  }
  return true;
}

// Pointwise max; variables present in only one side keep their mode.
inline ModeContext context_join(const ModeContext& a, const ModeContext& b) {
  ModeContext out = a;
  for (const auto& [v, m] : b) out.raise(v, m);
  return out;
}

// Pointwise requirement check where absent variables are Ind on both sides.
inline bool context_below(const ModeContext& required, const ModeContext& available) {
  for (const auto& [v, m] : required) {
    if (m > available.get(v)) return false;
  }
  return true;
}

struct ParamMode {
  std::string param;
  Mode mode;
  friend bool operator==(const ParamMode&, const ParamMode&) = default;
};

// Constructor name -> ordered parameter modes.
class ModeSignature {
 public:
  ModeSignature() = default;
  ModeSignature(std::initializer_list<std::pair<const std::string, std::vector<ParamMode>>> init)
      : entries_(init) {}

  const std::vector<ParamMode>* find(const std::string& ctor) const {
    auto it = entries_.find(ctor);
    return it == entries_.end() ? nullptr : &it->second;
  }

  const std::vector<ParamMode>& at(const std::string& ctor) const {
    auto it = entries_.find(ctor);
    if (it == entries_.end()) throw PreconditionError("constructor '" + ctor + "' not in signature");
    return it->second;
  }

  bool contains(const std::string& ctor) const { return entries_.contains(ctor); }
  void set(const std::string& ctor, std::vector<ParamMode> modes) { entries_[ctor] = std::move(modes); }
  void erase(const std::string& ctor) { entries_.erase(ctor); }

  // Entries of `other` override entries of this signature.
  void merge(const ModeSignature& other) {
    for (const auto& [c, v] : other.entries_) entries_[c] = v;
  }

  std::set<std::string> constructors() const {
    std::set<std::string> out;
    for (const auto& [c, _] : entries_) out.insert(c);
    return out;
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  friend bool operator==(const ModeSignature&, const ModeSignature&) = default;

 private:
  std::map<std::string, std::vector<ParamMode>> entries_;
};

// s1 <= s2 iff s1 demands at least as much as s2 everywhere: parameters are
// in contravariant position.
inline bool signature_le(const ModeSignature& s1, const ModeSignature& s2) {
  if (s1.constructors() != s2.constructors())
    throw PreconditionError("signature_le: constructor sets differ");
  for (const auto& [c, v1] : s1) {
    const auto& v2 = s2.at(c);
    if (v1.size() != v2.size()) throw PreconditionError("signature_le: arity differs for '" + c + "'");
    for (std::size_t i = 0; i < v1.size(); ++i) {
      if (v1[i].mode < v2[i].mode) return false;
    }
  }
  return true;
}

}  // namespace sepcheck
