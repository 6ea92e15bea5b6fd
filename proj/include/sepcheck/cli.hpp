#pragma once

#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sepcheck/blocks.hpp"
#include "sepcheck/checker.hpp"
#include "sepcheck/legacy.hpp"
#include "sepcheck/oracle.hpp"
#include "sepcheck/surface.hpp"

namespace sepcheck::cli {

enum class RunMode { Check, Explain, Oracle, Diff };
enum class Format { Text, Json };

struct RunConfig {
  std::vector<std::string> paths;
  RunMode mode = RunMode::Check;
  Format format = Format::Text;
  int oracle_depth = 4;
  bool small_pool = false;
  int legacy_fuel = default_legacy_fuel;

  Budget budget() const {
    Budget b = small_pool ? Budget::small() : Budget::standard();
    b.value_depth = oracle_depth;
    return b;
  }
};

inline constexpr int exit_ok = 0;
inline constexpr int exit_rejected = 1;
inline constexpr int exit_error = 2;

inline std::string param_name(const std::string& p) { return tyvar_to_string(p); }

inline std::string signature_entry(const std::string& name, const std::vector<ParamMode>& modes) {
  if (modes.empty()) return name;
  std::string out = name + "(";
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (i) out += ", ";
    out += param_name(modes[i].param) + ":" + std::string(to_string(modes[i].mode));
  }
  return out + ")";
}

inline std::string context_to_string(const ModeContext& g) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, m] : g) {
    if (!first) out += ", ";
    first = false;
    out += tyvar_to_string(v, {false}) + ":" + std::string(to_string(m));
  }
  return out + "}";
}

inline std::string judgment_to_string(const Judgment& j) {
  return context_to_string(j.context) + " |- " + to_string(j.subject, {false}) + " : " + std::string(to_string(j.mode));
}

inline const char* case_name(DischargeCase c) {
  switch (c) {
    case DischargeCase::Existential:
      return "existential right-hand side";
    case DischargeCase::AllInd:
      return "right-hand side unconstrained, equation dropped";
    case DischargeCase::Strengthen:
      return "parameter raised to Deepsep";
  }
  return "?";
}

struct FileReport {
  std::string path;
  Program program;
  std::vector<BlockResult> results;
};

namespace detail {

inline void print_derivation(std::ostream& out, const Derivation& d, int indent) {
  out << std::string(static_cast<std::size_t>(indent), ' ') << d.rule << "  "
      << (d.subject ? to_string(*d.subject, {false}) : std::string("?")) << " : " << to_string(d.mode)
      << "  needs " << context_to_string(d.demand);
  if (!d.note.empty()) out << "  [" << d.note << "]";
  out << "\n";
  for (const auto& p : d.premises) print_derivation(out, p, indent + 2);
}

inline std::string block_names(const Block& block) {
  std::string out;
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (i) out += ", ";
    out += block[i].name;
  }
  return out;
}

inline ModeSignature env_before(const std::vector<BlockResult>& results, std::size_t index) {
  ModeSignature env;
  for (std::size_t i = 0; i < index; ++i)
    if (results[i].accepted) env.merge(results[i].signature);
  return env;
}

inline GroundEnv ground_env_upto(const std::vector<Block>& blocks, std::size_t index) {
  GroundEnv env;
  for (std::size_t i = 0; i <= index; ++i)
    for (const auto& d : blocks[i]) env.emplace(d.name, d);
  return env;
}

inline nlohmann::json diagnostic_json(const Diagnostic& d) {
  nlohmann::json ctx = nlohmann::json::object();
  for (const auto& [v, m] : d.judgment.context) ctx[tyvar_to_string(v, {false})] = to_string(m);
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& s : d.trace)
    trace.push_back({{"rule", s.rule}, {"path", s.path}, {"subject", to_string(s.subject, {false})},
                     {"mode", to_string(s.mode)}});
  return {{"kind", to_string(d.kind)},
          {"path", d.path},
          {"message", d.message},
          {"judgment",
           {{"context", ctx}, {"subject", to_string(d.judgment.subject, {false})}, {"mode", to_string(d.judgment.mode)}}},
          {"trace", trace}};
}

inline nlohmann::json derivation_json(const Derivation& d) {
  nlohmann::json ctx = nlohmann::json::object();
  for (const auto& [v, m] : d.demand) ctx[tyvar_to_string(v, {false})] = to_string(m);
  nlohmann::json premises = nlohmann::json::array();
  for (const auto& p : d.premises) premises.push_back(derivation_json(p));
  nlohmann::json j{{"rule", d.rule},
                   {"subject", d.subject ? to_string(*d.subject, {false}) : ""},
                   {"mode", to_string(d.mode)},
                   {"needs", ctx},
                   {"premises", premises}};
  if (!d.note.empty()) j["note"] = d.note;
  return j;
}

}  // namespace detail

class Runner {
 public:
  Runner(RunConfig cfg, std::ostream& out, std::ostream& err) : cfg_(std::move(cfg)), out_(out), err_(err) {}

  int run() {
    int status = exit_ok;
    nlohmann::json json = nlohmann::json::array();
    const bool many = cfg_.paths.size() > 1;
    for (const auto& path : cfg_.paths) {
      std::string text;
      if (!read_file(path, text)) {
        err_ << path << ": error: cannot read file\n";
        status = exit_error;
        continue;
      }
      FileReport report{path, {}, {}};
      try {
        report.program = parse_program(text);
      } catch (const ParseError& e) {
        err_ << path << ":" << e.pos().line << ":" << e.pos().col << ": error: " << e.message();
        if (!e.expected().empty()) {
          err_ << " (expected ";
          for (std::size_t i = 0; i < e.expected().size(); ++i) {
            if (i) err_ << (i + 1 == e.expected().size() ? " or " : ", ");
            err_ << e.expected()[i];
          }
          err_ << ")";
        }
        err_ << "\n";
        status = exit_error;
        continue;
      }
      report.results = check_program(report.program.blocks);
      if (cfg_.format == Format::Text && many) out_ << "# " << path << "\n";
      int s = cfg_.format == Format::Text ? emit_text(report) : emit_json(report, json);
      if (status != exit_error) status = std::max(status, s);
    }
    if (cfg_.format == Format::Json) out_ << json.dump(2) << "\n";
    return status;
  }

 private:
  RunConfig cfg_;
  std::ostream& out_;
  std::ostream& err_;

  static bool read_file(const std::string& path, std::string& text) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    return !in.bad();
  }

  std::string decl_line(const Declaration& d, const BlockResult& r) const {
    if (r.accepted) return signature_entry(d.name, r.signature.at(d.name)) + " : accepted";
    return d.name + " : rejected (" + to_string(r.diagnostic->kind) + " at " + r.diagnostic->path + ")";
  }

  void explain_block(const FileReport& rep, std::size_t index) {
    const Block& block = rep.program.blocks[index];
    const BlockResult& r = rep.results[index];
    out_ << "block " << index + 1 << " (" << detail::block_names(block) << "): "
         << (r.accepted ? "accepted" : "rejected") << " after " << r.iterations
         << (r.iterations == 1 ? " iteration" : " iterations") << "\n";
    for (std::size_t i = 0; i < r.approximations.size(); ++i) {
      out_ << "  approximation " << i << ":";
      for (const auto& [c, modes] : r.approximations[i]) out_ << " " << signature_entry(c, modes);
      out_ << "\n";
    }
    ModeSignature full = detail::env_before(rep.results, index);
    full.merge(r.accepted ? r.signature : r.approximations.back());
    for (const auto& d : block) {
      DeclExplanation ex;
      try {
        check_decl(full, d, &ex);
      } catch (const CheckError&) {
      }
      out_ << "  " << d.name << ": " << (ex.rule.empty() ? decl_kind(d.body) : ex.rule) << "\n";
      if (is_boxed(d.body)) {
        out_ << "    boxed: no requirement on parameters\n";
        continue;
      }
      if (!ex.existentials.empty()) {
        out_ << "    existentials:";
        for (const auto& b : ex.existentials) out_ << " " << tyvar_to_string(b, {false});
        out_ << "\n";
      }
      if (!ex.guards.empty()) {
        out_ << "    equations (discharged in parameter order):";
        for (const auto& [a, k] : ex.guards) out_ << " " << tyvar_to_string(a, {false}) << " = " << to_string(k, {false}) << ";";
        out_ << "\n";
      }
      if (ex.core) {
        out_ << "    derivation of " << to_string(*ex.core, {false}) << " : Sep\n";
        detail::print_derivation(out_, ex.derivation, 6);
        out_ << "    initial context " << context_to_string(ex.initial) << "\n";
      }
      for (const auto& s : ex.steps) {
        out_ << "    equation " << tyvar_to_string(s.param, {false}) << " = " << to_string(s.rhs, {false}) << ": case "
             << static_cast<int>(s.which) << " (" << case_name(s.which) << ") " << context_to_string(s.before)
             << " -> " << context_to_string(s.after) << "\n";
      }
      if (r.accepted) out_ << "    parameters " << context_to_string(ex.result) << "\n";
    }
    if (!r.accepted) {
      const Diagnostic& dg = *r.diagnostic;
      out_ << "  rejected: " << to_string(dg.kind) << " at " << dg.path << ": " << dg.message << "\n";
      out_ << "  failing judgment: " << judgment_to_string(dg.judgment) << "\n";
      out_ << "  trace:\n";
      for (const auto& s : dg.trace)
        out_ << "    " << s.rule << " at " << s.path << ": " << to_string(s.subject, {false}) << " : "
             << to_string(s.mode) << "\n";
    }
  }

  SignatureVerdict oracle_verdict(const FileReport& rep, std::size_t index) const {
    return semantic_signature_check(detail::ground_env_upto(rep.program.blocks, index), rep.results[index].signature,
                                    cfg_.budget());
  }

  static std::string counterexample_text(const Counterexample& cx) {
    std::string inst;
    for (std::size_t i = 0; i < cx.instantiation.size(); ++i) {
      if (i) inst += ", ";
      inst += to_string(cx.instantiation[i], {false});
    }
    return cx.constructor + "(" + inst + ") holds float value " + to_string(cx.float_value) +
           " and non-float value " + to_string(cx.nonfloat_value);
  }

  int emit_text(const FileReport& rep) {
    int status = exit_ok;
    std::vector<DiffEntry> diff;
    if (cfg_.mode == RunMode::Diff) diff = diff_report(rep.program.blocks, cfg_.legacy_fuel);
    std::size_t diff_i = 0;
    for (std::size_t b = 0; b < rep.program.blocks.size(); ++b) {
      const BlockResult& r = rep.results[b];
      if (!r.accepted) status = exit_rejected;
      if (cfg_.mode == RunMode::Explain) explain_block(rep, b);
      for (const auto& d : rep.program.blocks[b]) {
        if (cfg_.mode == RunMode::Diff) {
          const DiffEntry& e = diff[diff_i++];
          out_ << d.name << " : " << to_string(e.classification) << " (legacy "
               << (e.legacy.accepted ? "accepts" : "rejects: " + e.legacy.reason) << "; new "
               << (e.new_accepted ? "accepts" : std::string("rejects: ") + to_string(*e.new_rejection)) << ")\n";
        } else {
          out_ << decl_line(d, r) << "\n";
        }
      }
      if (!r.accepted && cfg_.mode != RunMode::Explain)
        err_ << rep.path << ": " << detail::block_names(rep.program.blocks[b]) << ": " << r.diagnostic->message << "\n";
      if (cfg_.mode == RunMode::Oracle && r.accepted) {
        SignatureVerdict v = oracle_verdict(rep, b);
        out_ << "oracle (" << detail::block_names(rep.program.blocks[b]) << ") : " << to_string(v.status) << " ("
             << v.instances_checked << " instances)\n";
        if (v.counterexample) out_ << "  counterexample: " << counterexample_text(*v.counterexample) << "\n";
        if (v.status == Tri::Fails) status = exit_rejected;
      }
    }
    return status;
  }

  int emit_json(const FileReport& rep, nlohmann::json& json) {
    int status = exit_ok;
    std::vector<DiffEntry> diff;
    if (cfg_.mode == RunMode::Diff) diff = diff_report(rep.program.blocks, cfg_.legacy_fuel);
    std::size_t diff_i = 0;
    for (std::size_t b = 0; b < rep.program.blocks.size(); ++b) {
      const Block& block = rep.program.blocks[b];
      const BlockResult& r = rep.results[b];
      if (!r.accepted) status = exit_rejected;
      nlohmann::json j;
      j["file"] = rep.path;
      j["status"] = r.accepted ? "accepted" : "rejected";
      nlohmann::json names = nlohmann::json::array();
      for (const auto& d : block) names.push_back(d.name);
      j["declarations"] = names;
      nlohmann::json sig = nlohmann::json::object();
      if (r.accepted) {
        for (const auto& d : block) {
          nlohmann::json params = nlohmann::json::array();
          for (const auto& pm : r.signature.at(d.name))
            params.push_back({{"param", param_name(pm.param)}, {"mode", to_string(pm.mode)}});
          sig[d.name] = params;
        }
      }
      j["signature"] = sig;
      if (r.diagnostic) j["diagnostic"] = detail::diagnostic_json(*r.diagnostic);
      j["iterations"] = r.iterations;
      if (cfg_.mode == RunMode::Explain) {
        ModeSignature full = detail::env_before(rep.results, b);
        full.merge(r.accepted ? r.signature : r.approximations.back());
        nlohmann::json decls = nlohmann::json::array();
        for (const auto& d : block) {
          DeclExplanation ex;
          try {
            check_decl(full, d, &ex);
          } catch (const CheckError&) {
          }
          nlohmann::json e{{"name", d.name}, {"rule", ex.rule}};
          if (ex.core) e["derivation"] = detail::derivation_json(ex.derivation);
          nlohmann::json steps = nlohmann::json::array();
          for (const auto& s : ex.steps)
            steps.push_back({{"param", tyvar_to_string(s.param, {false})},
                             {"rhs", to_string(s.rhs, {false})},
                             {"case", static_cast<int>(s.which)}});
          e["equations"] = steps;
          decls.push_back(e);
        }
        j["explain"] = decls;
      }
      if (cfg_.mode == RunMode::Oracle && r.accepted) {
        SignatureVerdict v = oracle_verdict(rep, b);
        nlohmann::json o{{"status", to_string(v.status)}, {"instances", v.instances_checked}};
        if (v.counterexample) {
          nlohmann::json inst = nlohmann::json::array();
          for (const auto& t : v.counterexample->instantiation) inst.push_back(to_string(t, {false}));
          o["counterexample"] = {{"constructor", v.counterexample->constructor},
                                 {"instantiation", inst},
                                 {"float_value", to_string(v.counterexample->float_value)},
                                 {"nonfloat_value", to_string(v.counterexample->nonfloat_value)}};
        }
        if (v.status == Tri::Fails) status = exit_rejected;
        j["oracle"] = o;
      }
      if (cfg_.mode == RunMode::Diff) {
        nlohmann::json entries = nlohmann::json::array();
        for (std::size_t k = 0; k < block.size(); ++k) {
          const DiffEntry& e = diff[diff_i++];
          nlohmann::json legacy{{"accepted", e.legacy.accepted}};
          if (!e.legacy.accepted) legacy["reason"] = e.legacy.reason;
          nlohmann::json fresh{{"accepted", e.new_accepted}};
          if (e.new_rejection) fresh["kind"] = to_string(*e.new_rejection);
          entries.push_back(
              {{"name", e.name}, {"legacy", legacy}, {"new", fresh}, {"classification", to_string(e.classification)}});
        }
        j["diff"] = entries;
      }
      json.push_back(j);
    }
    return status;
  }
};

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) { return Runner(cfg, out, err).run(); }

}  // namespace sepcheck::cli
