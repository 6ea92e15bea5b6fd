#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sepcheck/checker.hpp"
#include "sepcheck/context.hpp"
#include "sepcheck/datatype.hpp"

namespace sepcheck {

struct BlockResult {
  bool accepted = false;
  ModeSignature signature;  // block constructors only; meaningful when accepted
  int iterations = 0;
  std::optional<Diagnostic> diagnostic;
  std::vector<ModeSignature> approximations;  // successive approximations, starting from all-Ind
};

inline ModeSignature initial_signature(const Block& block) {
  ModeSignature sig;
  for (const auto& d : block) {
    std::vector<ParamMode> v;
    for (const auto& p : d.params) v.push_back({p, Mode::Ind});
    sig.set(d.name, std::move(v));
  }
  return sig;
}

inline int parameter_count(const Block& block) {
  int n = 0;
  for (const auto& d : block) n += static_cast<int>(d.params.size());
  return n;
}

// Signature entry built from a declaration's parameter context.
inline std::vector<ParamMode> to_param_modes(const Declaration& d, const ModeContext& g) {
  std::vector<ParamMode> v;
  for (const auto& p : d.params) v.push_back({p, g.get(p)});
  return v;
}

// Iterates from the most permissive signature, raising parameter modes until
// every declaration is satisfied by the current approximation.
inline BlockResult check_block(const ModeSignature& env, const Block& block) {
  for (const auto& d : block)
    if (env.contains(d.name)) throw PreconditionError("block constructor '" + d.name + "' already in environment");

  BlockResult result;
  ModeSignature approx = initial_signature(block);
  result.approximations.push_back(approx);
  const int bound = 2 * parameter_count(block) + 1;

  for (;;) {
    ++result.iterations;
    ModeSignature full = env;
    full.merge(approx);
    ModeSignature candidate = approx;
    try {
      for (const auto& d : block) {
        ModeContext g = check_decl(full, d);
        auto entry = candidate.at(d.name);
        for (auto& pm : entry) pm.mode = max(pm.mode, g.get(pm.param));
        candidate.set(d.name, std::move(entry));
      }
    } catch (const CheckError& e) {
      result.accepted = false;
      result.diagnostic = e.diagnostic();
      return result;
    }
    if (candidate == approx) break;
    if (result.iterations >= bound) {
      result.diagnostic = Diagnostic{DiagnosticKind::Internal,
                                     block.front().name,
                                     Judgment{approx, {}, tint(), Mode::Sep},
                                     {},
                                     "fixpoint did not stabilize within " + std::to_string(bound) + " iterations"};
      return result;
    }
    approx = std::move(candidate);
    result.approximations.push_back(approx);
  }
  result.accepted = true;
  result.signature = approx;
  return result;
}

// Re-checks every declaration once under the final signature; true when no
// declaration demands more than the signature grants.
inline bool audit_block(const ModeSignature& env, const Block& block, const ModeSignature& sig) {
  ModeSignature full = env;
  full.merge(sig);
  try {
    for (const auto& d : block) {
      ModeContext g = check_decl(full, d);
      for (const auto& pm : sig.at(d.name))
        if (g.get(pm.param) > pm.mode) return false;
    }
  } catch (const CheckError&) {
    return false;
  }
  return true;
}

// Blocks are checked in order; accepted signatures extend the environment of
// later blocks, rejected ones leave their constructors undefined.
inline std::vector<BlockResult> check_program(const std::vector<Block>& blocks, ModeSignature env = {}) {
  std::vector<BlockResult> out;
  for (const auto& block : blocks) {
    BlockResult r = check_block(env, block);
    if (r.accepted) env.merge(r.signature);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace sepcheck
