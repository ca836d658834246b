// Drives the installed CLI end to end through std::system: synth -> validate
// -> enumerate -> infer-risk -> features -> train -> evaluate -> sweep ->
// report, checking exit codes, artifacts, reproducibility, and that inputs
// are never mutated.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

const char* cli = HINRISK_CLI_PATH;

int run(const std::string& args) {
  std::string cmd = std::string(cli) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path workdir() {
  fs::path dir = fs::temp_directory_path() / "hinrisk_cli_test";
  return dir;
}

std::string data_flags(const fs::path& dir) {
  return " --nodes " + (dir / "nodes.csv").string() + " --attrs " +
         (dir / "attributes.csv").string() + " --edges " + (dir / "edges.csv").string() +
         " --labels " + (dir / "labels.csv").string();
}

}  // namespace

TEST_CASE("full pipeline through the CLI") {
  fs::path base = workdir();
  fs::remove_all(base);
  fs::create_directories(base);
  fs::path data = base / "data";

  // --- synth
  REQUIRE(run("synth --seed 11 --enterprises 90 --persons 270 --commodities 90 --news 120"
              " --stale-fraction 0.4 --out " + data.string()) == 0);
  for (const char* name :
       {"nodes.csv", "attributes.csv", "edges.csv", "labels.csv", "ground_truth.json",
        "manifest.json"}) {
    CHECK(fs::exists(data / name));
  }
  std::string nodes_before = slurp(data / "nodes.csv");

  // --- validate / ingest
  CHECK(run("validate" + data_flags(data)) == 0);
  fs::path ingest_dir = base / "ingest";
  REQUIRE(run("ingest" + data_flags(data) + " --out " + ingest_dir.string()) == 0);
  CHECK(fs::exists(ingest_dir / "summary.json"));
  CHECK(slurp(ingest_dir / "summary.json").find("\"nodes\"") != std::string::npos);

  // --- enumerate
  fs::path enum_dir = base / "enumerate";
  REQUIRE(run("enumerate --max-relations 2 --max-paths 40 --out " + enum_dir.string()) == 0);
  std::string listing = slurp(enum_dir / "metapaths.txt");
  CHECK(listing.find("E-[control]->P-[shareholder]->E") != std::string::npos);
  CHECK(listing.find("E-[parent]->E") != std::string::npos);

  // --- infer-risk
  fs::path risk_dir = base / "risk";
  REQUIRE(run("infer-risk" + data_flags(data) + " --out " + risk_dir.string()) == 0);
  CHECK(fs::exists(risk_dir / "risk.csv"));
  CHECK(fs::exists(risk_dir / "nb_model_person.json"));

  // --- features (uses the enumerated list)
  fs::path feat_dir = base / "features";
  REQUIRE(run("features" + data_flags(data) + " --paths " +
              (enum_dir / "metapaths.txt").string() +
              " --feature-kinds naive,hetesim --workers 2 --out " + feat_dir.string()) == 0);
  CHECK(fs::exists(feat_dir / "features_naive.csv"));
  CHECK(fs::exists(feat_dir / "features_naive.imputed.csv"));
  CHECK(fs::exists(feat_dir / "features_naive.json"));
  CHECK(fs::exists(feat_dir / "features_hetesim.csv"));
  CHECK(slurp(feat_dir / "features_naive.csv").rfind("enterprise_id,", 0) == 0);

  // --- train on the naive matrix
  fs::path train_dir = base / "train";
  REQUIRE(run("train --features " + (feat_dir / "features_naive.imputed.csv").string() +
              " --train-labels " + (data / "labels.csv").string() + " --univariate --out " +
              train_dir.string()) == 0);
  CHECK(fs::exists(train_dir / "model_report.json"));
  std::string ranking = slurp(train_dir / "ranking.csv");
  CHECK(ranking.rfind("rank,feature,p_value,significance", 0) == 0);
  CHECK(fs::exists(train_dir / "ranking_univariate.csv"));

  // --- evaluate
  fs::path eval_dir = base / "evaluate";
  REQUIRE(run("evaluate" + data_flags(data) +
              " --max-relations 2 --max-paths 16 --top-k 5 --folds 3 --seed 7 --out " +
              eval_dir.string()) == 0);
  CHECK(fs::exists(eval_dir / "comparison.json"));
  CHECK(fs::exists(eval_dir / "roc_naive_mp.csv"));
  CHECK(fs::exists(eval_dir / "ranking_hetesim_mp.csv"));
  std::string comparison = slurp(eval_dir / "comparison.json");
  CHECK(comparison.find("sme_cv") != std::string::npos);
  CHECK(comparison.find("average_auc") != std::string::npos);

  // --- sweep
  fs::path sweep_dir = base / "sweep";
  REQUIRE(run("sweep" + data_flags(data) +
              " --window 0:1000 --window 500:1000 --max-relations 2 --max-paths 12"
              " --top-k 4 --folds 3 --out " + sweep_dir.string()) == 0);
  std::string sweep_csv = slurp(sweep_dir / "sweep.csv");
  CHECK(sweep_csv.rfind("window_start,window_end,metric", 0) == 0);
  CHECK(sweep_csv.find("500,1000") != std::string::npos);

  // --- report
  fs::path report_dir = base / "report";
  REQUIRE(run("report --evaluation " + eval_dir.string() + " --out " + report_dir.string()) ==
          0);
  std::string md = slurp(report_dir / "report.md");
  CHECK(md.find("| method | average AUC |") != std::string::npos);
  CHECK(md.find("hetesim_mp") != std::string::npos);

  // inputs were never mutated
  CHECK(slurp(data / "nodes.csv") == nodes_before);

  fs::remove_all(base);
}

TEST_CASE("identical config and seed give checksum-identical artifacts") {
  fs::path base = workdir() / "repro";
  fs::remove_all(base);
  fs::create_directories(base);
  fs::path a = base / "a", b = base / "b";
  std::string flags =
      " --seed 99 --enterprises 60 --persons 180 --commodities 60 --news 80 --out ";
  REQUIRE(run("synth" + flags + a.string()) == 0);
  REQUIRE(run("synth" + flags + b.string()) == 0);
  for (const char* name : {"nodes.csv", "attributes.csv", "edges.csv", "labels.csv",
                           "ground_truth.json", "manifest.json"}) {
    CHECK(slurp(a / name) == slurp(b / name));
  }

  fs::path ea = base / "eval_a", eb = base / "eval_b";
  std::string eval_flags = data_flags(a) +
                           " --max-relations 2 --max-paths 12 --top-k 4 --folds 3 --seed 5"
                           " --workers 3 --out ";
  REQUIRE(run("evaluate" + eval_flags + ea.string()) == 0);
  REQUIRE(run("evaluate" + eval_flags + eb.string()) == 0);
  CHECK(slurp(ea / "comparison.json") == slurp(eb / "comparison.json"));
  CHECK(slurp(ea / "roc_hetesim_mp.csv") == slurp(eb / "roc_hetesim_mp.csv"));
  fs::remove_all(base);
}

TEST_CASE("config file seeds options and flags override it") {
  fs::path base = workdir() / "config";
  fs::remove_all(base);
  fs::create_directories(base);
  fs::path cfg = base / "config.json";
  {
    std::ofstream out(cfg);
    out << R"({"max_relations": 1, "max_paths": 40})";
  }
  fs::path d1 = base / "from_file";
  REQUIRE(run("enumerate --config " + cfg.string() + " --out " + d1.string()) == 0);
  std::string l1 = slurp(d1 / "metapaths.txt");
  CHECK(l1.find("E-[control]->P-[shareholder]->E") == std::string::npos);  // depth 1 only

  fs::path d2 = base / "flag_override";
  REQUIRE(run("enumerate --config " + cfg.string() + " --max-relations 2 --out " +
              d2.string()) == 0);
  std::string l2 = slurp(d2 / "metapaths.txt");
  CHECK(l2.find("E-[control]->P-[shareholder]->E") != std::string::npos);

  // the manifest records the resolved config and its hash
  std::string manifest = slurp(d2 / "manifest.json");
  CHECK(manifest.find("\"max_relations\": 2") != std::string::npos);
  CHECK(manifest.find("config_sha256") != std::string::npos);
  fs::remove_all(base);
}

TEST_CASE("exit codes distinguish usage, data and numerical failures") {
  fs::path base = workdir() / "errors";
  fs::remove_all(base);
  fs::create_directories(base);

  // usage: unknown flag
  CHECK(run("enumerate --no-such-flag") != 0);
  // usage: missing required data flags
  CHECK(run("validate") != 0);

  // data error: dangling edge -> exit 3
  fs::path data = base / "bad";
  fs::create_directories(data);
  {
    std::ofstream(data / "nodes.csv") << "id,type,timestamp\nv1,enterprise,\n";
    std::ofstream(data / "attributes.csv") << "id,attr_name,attr_value\n";
    std::ofstream(data / "edges.csv") << "id,src,dst,relation,timestamp\ne1,v1,v9,parent,\n";
    std::ofstream(data / "labels.csv") << "id,risky\n";
  }
  CHECK(run("validate" + data_flags(data)) == 3);

  // numerical failure: perfectly separated training data -> exit 4
  fs::path sep = base / "sep";
  fs::create_directories(sep);
  {
    std::ofstream(sep / "features.csv")
        << "enterprise_id,x:naive\na,0\nb,0.1\nc,0.9\nd,1\n";
    std::ofstream(sep / "labels.csv") << "id,risky\na,0\nb,0\nc,1\nd,1\n";
  }
  CHECK(run("train --features " + (sep / "features.csv").string() + " --train-labels " +
            (sep / "labels.csv").string() + " --out " + (sep / "out").string()) == 4);
  // partial artifacts were removed on failure
  CHECK_FALSE(fs::exists(sep / "out" / "model_report.json"));
  fs::remove_all(base);
}
