#include <sys/wait.h>

#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "temp_dir.hpp"
#include "citenet/cli/run_config.hpp"
#include "citenet/common/error.hpp"

using namespace citenet;
using citenet::cli::RunConfig;

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the built binary with stdout and stderr captured to files.
Run run_cli(const std::string& args, const testing::TempDir& dir) {
  const auto out = dir / "stdout.txt";
  const auto err = dir / "stderr.txt";
  const auto command = std::string(CITENET_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(command.c_str());
  Run r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = testing::slurp(out);
  r.err = testing::slurp(err);
  return r;
}

std::string quoted(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

void write_cycle(const std::filesystem::path& path) {
  testing::spit(path, "citing_id,cited_id,intent,confidence\na,b,method,1\nb,c,background,1\nc,a,result,1\n");
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("run config rejects unknown keys and malformed values") {
    RunConfig config;
    CHECK_THROWS_AS(config.set("learning_rate", "1"), ValidationError);
    CHECK_THROWS_AS(config.set("epochs", "many"), ValidationError);
    CHECK_THROWS_AS(config.set("epochs", "-1"), ValidationError);
    CHECK_THROWS_AS(config.set("dangling", "teleport"), ValidationError);
    CHECK_THROWS_AS(config.set_assignment("no-equals-sign"), ValidationError);
    std::istringstream file("# comment\n\nepochs=3\nwarp=9\n");
    CHECK_THROWS_AS(config.load(file), ValidationError);
  }

  TEST_CASE("run config parses typed values") {
    RunConfig config;
    config.set("epochs", "7");
    config.set("damping", "0.9");
    config.set("undirected", "true");
    config.set("remove_intents", " background , method ,");
    CHECK(config.count("epochs") == 7);
    CHECK(config.real("damping") == 0.9);
    CHECK(config.flag("undirected"));
    CHECK(config.list("remove_intents") == std::vector<std::string>{"background", "method"});
    CHECK_FALSE(config.optional_real("min_confidence"));
    config.set("min_confidence", "0.5");
    CHECK(config.optional_real("min_confidence") == 0.5);
    CHECK_THROWS_AS(config.train_config(), ValidationError);
    config.set("seed", "11");
    CHECK(config.train_config().seed == 11u);
  }

  TEST_CASE("later layers win and the resolved config round-trips") {
    RunConfig config;
    config.apply_preset(ssgan::scicite_preset());
    CHECK(config.count("noise_dim") == 768);
    std::istringstream file("noise_dim=50\nepochs=4\n");
    config.load(file);
    config.set_assignment("epochs=9");
    CHECK(config.count("noise_dim") == 50);
    CHECK(config.count("epochs") == 9);

    std::ostringstream out;
    config.write(out);
    RunConfig back;
    std::istringstream in(out.str());
    back.load(in);
    std::ostringstream again;
    back.write(again);
    CHECK(again.str() == out.str());
    CHECK(out.str().rfind("seed=\n", 0) == 0);
    CHECK(cli::resolved_config_path("out/model.bin") == std::filesystem::path("out/model.bin.run.conf"));
  }

  TEST_CASE("every subcommand documents its flags") {
    testing::TempDir dir;
    const std::vector<std::pair<std::string, std::vector<std::string>>> expected = {
        {"ingest", {"--jsonl", "--csv", "--out", "--schema", "--field", "--skip-report"}},
        {"split", {"--records", "--train", "--dev", "--test", "--schema", "--out", "--seed", "--labeled-fraction"}},
        {"synth", {"--out-dir", "--seed", "--size", "--dim"}},
        {"train", {"--embeddings", "--schema", "--split", "--config", "--out-model", "--seed", "--preset", "--set",
                   "--epochs", "--objective", "--threads"}},
        {"classify", {"--model", "--embeddings", "--out", "--records", "--predictions"}},
        {"eval", {"--pred", "--gold", "--format", "--micro"}},
        {"graph", {"--edges", "--largest-wcc", "--nodes", "--out-edges", "--out-nodes"}},
        {"centrality", {"--graph", "--metric", "--top-k", "--out", "--damping", "--tolerance", "--max-iterations",
                        "--dangling", "--variant", "--direction", "--undirected", "--scope"}},
        {"filter", {"--graph", "--remove-intents", "--impact", "--rank-shift", "--bump", "--min-confidence",
                    "--drop-isolated", "--horizon", "--per-intent", "--impact-scope"}}};
    for (const auto& [command, flags] : expected) {
      CAPTURE(command);
      const auto r = run_cli(command + " --help", dir);
      CHECK(r.exit_code == 0);
      for (const auto& flag : flags) {
        CAPTURE(flag);
        CHECK(r.out.find(flag) != std::string::npos);
      }
    }
  }

  TEST_CASE("usage errors exit 2") {
    testing::TempDir dir;
    CHECK(run_cli("graph --bogus", dir).exit_code == 2);
    CHECK(run_cli("", dir).exit_code == 2);
    CHECK(run_cli("no-such-command", dir).exit_code == 2);
    CHECK(run_cli("centrality --metric pagerank", dir).exit_code == 2);
    // Input paths are checked while parsing arguments.
    CHECK(run_cli("graph --edges " + quoted(dir / "missing.csv"), dir).exit_code == 2);
  }

  TEST_CASE("validation errors exit 1") {
    testing::TempDir dir;
    write_cycle(dir / "g.csv");
    const auto r = run_cli("centrality --graph " + quoted(dir / "g.csv") + " --metric pagerank --damping 1.5 --out " +
                               quoted(dir / "pr.csv"),
                           dir);
    CHECK(r.exit_code == 1);
    CHECK_FALSE(r.err.empty());
    CHECK(run_cli("filter --graph " + quoted(dir / "g.csv") + " --remove-intents rebuttal --impact " +
                      quoted(dir / "i.csv"),
                  dir)
              .exit_code == 1);
  }

  TEST_CASE("train requires a seed") {
    testing::TempDir dir;
    for (const char* name : {"x.cemb", "s.txt", "r.csv"}) testing::spit(dir / name, "");
    const auto r = run_cli("train --embeddings " + quoted(dir / "x.cemb") + " --schema " + quoted(dir / "s.txt") +
                               " --split " + quoted(dir / "r.csv") + " --out-model " + quoted(dir / "m.bin"),
                           dir);
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("seed") != std::string::npos);
  }

  TEST_CASE("pagerank top-20 on a 3-cycle gives three rows of 1") {
    testing::TempDir dir;
    write_cycle(dir / "g.csv");
    const auto r = run_cli("centrality --graph " + quoted(dir / "g.csv") + " --metric pagerank --top-k 20 --out " +
                               quoted(dir / "pr.csv"),
                           dir);
    CHECK(r.exit_code == 0);
    CHECK(testing::slurp(dir / "pr.csv") ==
          "node_id,metric,value,rank\na,pagerank,1,1\nb,pagerank,1,2\nc,pagerank,1,3\n");
    CHECK(std::filesystem::exists(dir / "pr.csv.run.conf"));
  }

  TEST_CASE("pagerank that hits the iteration cap exits 3") {
    testing::TempDir dir;
    testing::spit(dir / "g.csv", "citing_id,cited_id,intent,confidence\na,b,,\nb,c,,\nc,a,,\nc,b,,\n");
    const auto r = run_cli("centrality --graph " + quoted(dir / "g.csv") +
                               " --metric pagerank --max-iterations 2 --out " + quoted(dir / "pr.csv"),
                           dir);
    CHECK(r.exit_code == 3);
    CHECK(std::filesystem::exists(dir / "pr.csv"));
  }

  TEST_CASE("removing no intents reports all-zero deltas") {
    testing::TempDir dir;
    write_cycle(dir / "g.csv");
    const auto r = run_cli("filter --graph " + quoted(dir / "g.csv") + " --remove-intents '' --impact " +
                               quoted(dir / "impact.csv"),
                           dir);
    CHECK(r.exit_code == 0);
    CHECK(testing::slurp(dir / "impact.csv") ==
          "filter,quantity,before,after,delta_pct\n"
          "-none,nodes,3,3,0\n-none,edges,3,3,0\n-none,components,1,1,0\n");
    CHECK(r.out.find("(0.0%)") != std::string::npos);
  }

  TEST_CASE("a config file and --set feed the resolved config") {
    testing::TempDir dir;
    write_cycle(dir / "g.csv");
    testing::spit(dir / "run.conf", "damping=0.5\ntop_k=2\n");
    const auto r = run_cli("centrality --graph " + quoted(dir / "g.csv") + " --metric pagerank --config " +
                               quoted(dir / "run.conf") + " --set top_k=1 --out " + quoted(dir / "pr.csv"),
                           dir);
    REQUIRE(r.exit_code == 0);
    const auto resolved = testing::slurp(dir / "pr.csv.run.conf");
    CHECK(resolved.find("damping=0.5\n") != std::string::npos);
    CHECK(resolved.find("top_k=1\n") != std::string::npos);
    CHECK(testing::slurp(dir / "pr.csv") == "node_id,metric,value,rank\na,pagerank,1,1\n");
    CHECK(run_cli("centrality --graph " + quoted(dir / "g.csv") + " --metric pagerank --set warp=1 --out " +
                      quoted(dir / "x.csv"),
                  dir)
              .exit_code == 1);
  }
}
