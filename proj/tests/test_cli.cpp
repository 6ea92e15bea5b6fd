#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "sepcheck/cli.hpp"

using namespace sepcheck;
using namespace sepcheck::cli;

namespace {

std::string sample(const std::string& name) { return std::string(SEPCHECK_SAMPLES_DIR) + "/" + name; }

const std::vector<std::string> kSamples{"any.ml",        "cascade.ml",     "cyclic.ml",   "first.ml",
                                        "second.ml",     "strange_eq.ml",  "tree_node.ml", "unsafe_cycle.ml"};

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> paths, RunMode mode = RunMode::Check, Format format = Format::Text) {
  RunConfig cfg;
  cfg.paths = std::move(paths);
  cfg.mode = mode;
  cfg.format = format;
  std::ostringstream out, err;
  int s = run(cfg, out, err);
  return {s, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST(Cli, SecondSignature) {
  Outcome o = run_cli({sample("second.ml")});
  EXPECT_EQ(o.status, exit_ok);
  EXPECT_EQ(lines(o.out), (std::vector<std::string>{"second('a:Ind, 'b:Sep) : accepted", "u : accepted"}));
}

TEST(Cli, AnyRejected) {
  Outcome o = run_cli({sample("any.ml")});
  EXPECT_EQ(o.status, exit_rejected);
  EXPECT_EQ(lines(o.out), (std::vector<std::string>{"any : rejected (unguarded-existential at any.Any)"}));
  EXPECT_NE(o.err.find("existential"), std::string::npos);
}

TEST(Cli, TreeNodeDiff) {
  Outcome o = run_cli({sample("tree_node.ml")}, RunMode::Diff);
  EXPECT_EQ(o.status, exit_ok);
  int count = 0;
  for (const auto& l : lines(o.out)) count += l.find("new-accepts-legacy-rejects") != std::string::npos;
  EXPECT_EQ(count, 1);
  EXPECT_NE(o.out.find("node : new-accepts-legacy-rejects"), std::string::npos);
}

TEST(Cli, ExplainNamesRulesAndCases) {
  Outcome o = run_cli({sample("first.ml")}, RunMode::Explain);
  EXPECT_EQ(o.status, exit_ok);
  EXPECT_NE(o.out.find("case 3"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("var  'b : Sep"), std::string::npos) << o.out;
  Outcome u = run_cli({sample("unsafe_cycle.ml")}, RunMode::Explain);
  EXPECT_EQ(u.status, exit_rejected);
  EXPECT_NE(u.out.find("trace:"), std::string::npos);
  EXPECT_NE(u.out.find("unsafe-cycle"), std::string::npos);
}

TEST(Cli, OracleMode) {
  Outcome o = run_cli({sample("strange_eq.ml")}, RunMode::Oracle);
  EXPECT_EQ(o.status, exit_rejected);  // t2 is rejected
  EXPECT_NE(o.out.find("oracle (strange_eq) : holds"), std::string::npos) << o.out;
  Outcome c = run_cli({sample("cyclic.ml")}, RunMode::Oracle);
  EXPECT_EQ(c.status, exit_ok);
  EXPECT_EQ(c.out.find("fails"), std::string::npos) << c.out;
}

TEST(Cli, ParseErrorExitsTwoWithPosition) {
  std::string path = temp_file("sepcheck_bad.ml", "type t = int\ntype u = 'a\n");
  Outcome o = run_cli({path});
  EXPECT_EQ(o.status, exit_error);
  EXPECT_NE(o.err.find(path + ":2:10: error:"), std::string::npos) << o.err;
}

TEST(Cli, MissingFileExitsTwo) {
  EXPECT_EQ(run_cli({"/nonexistent/file.ml"}).status, exit_error);
}

TEST(Cli, SeveralFilesGetHeaders) {
  Outcome o = run_cli({sample("second.ml"), sample("any.ml")});
  EXPECT_EQ(o.status, exit_rejected);
  EXPECT_EQ(lines(o.out).front(), "# " + sample("second.ml"));
}

TEST(Cli, JsonCarriesTheSameVerdicts) {
  for (const auto& name : kSamples) {
    Outcome text = run_cli({sample(name)});
    Outcome json = run_cli({sample(name)}, RunMode::Check, Format::Json);
    EXPECT_EQ(text.status, json.status) << name;
    std::vector<std::string> rebuilt;
    for (const auto& block : nlohmann::json::parse(json.out)) {
      for (const auto& decl : block["declarations"]) {
        std::string n = decl.get<std::string>();
        if (block["status"] == "accepted") {
          std::string line = n;
          const auto& params = block["signature"][n];
          if (!params.empty()) {
            line += "(";
            for (std::size_t i = 0; i < params.size(); ++i) {
              if (i) line += ", ";
              line += params[i]["param"].get<std::string>() + ":" + params[i]["mode"].get<std::string>();
            }
            line += ")";
          }
          rebuilt.push_back(line + " : accepted");
        } else {
          rebuilt.push_back(n + " : rejected (" + block["diagnostic"]["kind"].get<std::string>() + " at " +
                            block["diagnostic"]["path"].get<std::string>() + ")");
        }
      }
    }
    EXPECT_EQ(rebuilt, lines(text.out)) << name;
  }
}

TEST(Cli, JsonSchema) {
  Outcome o = run_cli({sample("cascade.ml")}, RunMode::Check, Format::Json);
  auto j = nlohmann::json::parse(o.out);
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 2u);
  for (const auto& b : j) {
    EXPECT_TRUE(b.contains("status"));
    EXPECT_TRUE(b.contains("signature"));
    EXPECT_TRUE(b.contains("iterations"));
    EXPECT_TRUE(b.contains("diagnostic"));
  }
}

TEST(Cli, OutputIsDeterministic) {
  for (RunMode mode : {RunMode::Check, RunMode::Explain, RunMode::Oracle, RunMode::Diff}) {
    for (Format f : {Format::Text, Format::Json}) {
      std::vector<std::string> all;
      for (const auto& n : kSamples) all.push_back(sample(n));
      Outcome a = run_cli(all, mode, f), b = run_cli(all, mode, f);
      EXPECT_EQ(a.out, b.out);
      EXPECT_EQ(a.err, b.err);
      EXPECT_EQ(a.status, b.status);
    }
  }
}
