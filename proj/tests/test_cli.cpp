// End-to-end tests of the command-line tool: each case shells out to the
// built binary and checks exit codes and outputs.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kCli = AGGFIT_CLI_PATH;
const fs::path kDataDir = AGGFIT_DATA_DIR;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("aggfit_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

RunResult run(const TempDir& dir, const std::string& args) {
  const fs::path out = dir.path / "stdout.txt";
  const fs::path err = dir.path / "stderr.txt";
  const std::string cmd =
      kCli + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  std::stringstream so, se;
  so << std::ifstream(out).rdbuf();
  se << std::ifstream(err).rdbuf();
  r.out = so.str();
  r.err = se.str();
  return r;
}

std::string read_file(const fs::path& p) {
  std::stringstream s;
  s << std::ifstream(p).rdbuf();
  return s.str();
}

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (const char c : text) n += c == '\n';
  return n;
}

void write_toy(const TempDir& dir) {
  std::ofstream data(dir.path / "toy.data");
  data << "1,a\n1,a\n2,b\n2,b\n";
  std::ofstream schema(dir.path / "toy.schema");
  schema << "dataset = toy\nclass_labels = a,b\n"
         << "[attribute]\nname = flag\nkind = nominal\n"
         << "[attribute]\nname = outcome\nkind = class\n";
}

}  // namespace

TEST_CASE("fit: report on stdout, model written, deterministic") {
  TempDir dir;
  const std::string base =
      "fit --data " + (kDataDir / "breast-cancer-wisconsin.data").string() +
      " --schema " + (kDataDir / "breast-cancer-wisconsin.schema").string();

  const RunResult first =
      run(dir, base + " --model " + (dir.path / "a.model").string());
  REQUIRE(first.exit_code == 0);
  CHECK(first.out.find("Einstein Product") != std::string::npos);
  CHECK(first.out.find("Convex combination of max") != std::string::npos);
  CHECK(first.out.find("Selected operator: Algebraic Product") !=
        std::string::npos);
  CHECK(first.out.find("Training accuracy: 683/699") != std::string::npos);
  CHECK(fs::exists(dir.path / "a.model"));

  const RunResult second =
      run(dir, base + " --model " + (dir.path / "b.model").string());
  REQUIRE(second.exit_code == 0);
  CHECK(second.out == first.out);
  CHECK(read_file(dir.path / "a.model") == read_file(dir.path / "b.model"));
}

TEST_CASE("fit: delimited report has one row per family") {
  TempDir dir;
  const RunResult r = run(
      dir, "fit --data " + (kDataDir / "lymphography.data").string() +
               " --schema " + (kDataDir / "lymphography.schema").string() +
               " --model " + (dir.path / "m.model").string() +
               " --format delimited --report " +
               (dir.path / "r.csv").string());
  REQUIRE(r.exit_code == 0);
  const std::string csv = read_file(dir.path / "r.csv");
  CHECK(count_lines(csv) == 15);  // header + 14 families
  CHECK(csv.find("DombiIntersection") != std::string::npos);

  const RunResult dubois = run(
      dir, "fit --data " + (kDataDir / "lymphography.data").string() +
               " --schema " + (kDataDir / "lymphography.schema").string() +
               " --model " + (dir.path / "m2.model").string() +
               " --format delimited --include-dubois --report " +
               (dir.path / "r2.csv").string());
  REQUIRE(dubois.exit_code == 0);
  CHECK(count_lines(read_file(dir.path / "r2.csv")) == 16);
}

TEST_CASE("fit: toy fixture reaches 100% and survives coarse grids") {
  TempDir dir;
  write_toy(dir);
  const std::string base = "fit --data " + (dir.path / "toy.data").string() +
                           " --schema " + (dir.path / "toy.schema").string() +
                           " --model " + (dir.path / "toy.model").string();

  const RunResult r = run(dir, base);
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("Training accuracy: 4/4 = 100%") != std::string::npos);

  CHECK(run(dir, base + " --steps 2").exit_code == 0);
  CHECK(run(dir, base + " --sigmoid literal").exit_code == 0);
  CHECK(run(dir, base + " --bounds full").exit_code == 0);
  CHECK(run(dir, base + " --grid HamacherProduct=0,1,2").exit_code == 0);

  // step_count below 2 is rejected
  const RunResult bad = run(dir, base + " --steps 1");
  CHECK(bad.exit_code == 1);
  CHECK(bad.err.find("fit") != std::string::npos);
}

TEST_CASE("classify: training replay, missing cells, unseen values") {
  TempDir dir;
  write_toy(dir);
  REQUIRE(run(dir, "fit --data " + (dir.path / "toy.data").string() +
                       " --schema " + (dir.path / "toy.schema").string() +
                       " --model " + (dir.path / "toy.model").string())
              .exit_code == 0);
  const std::string model = (dir.path / "toy.model").string();

  // replaying the training file (class column present) echoes the labels
  const RunResult replay = run(dir, "classify --model " + model + " --data " +
                                        (dir.path / "toy.data").string());
  REQUIRE(replay.exit_code == 0);
  CHECK(replay.out == "a\na\nb\nb\n");

  // single instances: known value, missing value, out-of-range value
  const RunResult single =
      run(dir, "classify --model " + model + " --instance 2 --instance ?");
  REQUIRE(single.exit_code == 0);
  CHECK(count_lines(single.out) == 2);

  const RunResult unseen =
      run(dir, "classify --model " + model + " --instance 3");
  CHECK(unseen.exit_code == 1);  // token outside the nominal mapping
  CHECK(unseen.err.find("classify") != std::string::npos);

  CHECK(run(dir, "classify --model " + model).exit_code == 1);
}

TEST_CASE("report subcommand prints without writing a model") {
  TempDir dir;
  const RunResult r =
      run(dir, "report --data " + (kDataDir / "echocardiogram.data").string() +
                   " --schema " + (kDataDir / "echocardiogram.schema").string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("Result of echocardiogram") != std::string::npos);
  CHECK(r.out.find("Selected operator:") != std::string::npos);
}

TEST_CASE("validate: clean pass, seeded, and fault injection") {
  TempDir dir;
  const RunResult ok = run(dir, "validate --samples 150 --seed 7");
  REQUIRE(ok.exit_code == 0);
  CHECK(ok.out.find("range: PASS") != std::string::npos);
  CHECK(ok.out.find("duality: PASS") != std::string::npos);
  CHECK(ok.out.find("all axiom checks passed") != std::string::npos);

  const auto start = std::chrono::steady_clock::now();
  CHECK(run(dir, "validate --samples 10000").exit_code == 0);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  CHECK(seconds < 10.0);

  const RunResult fault =
      run(dir, "validate --samples 150 --seed 7 --inject-fault");
  CHECK(fault.exit_code == 1);
  CHECK(fault.out.find("monotonicity: FAIL") != std::string::npos);
  CHECK(fault.out.find("InjectedFault") != std::string::npos);
}

TEST_CASE("pipeline failures name the stage on stderr") {
  TempDir dir;
  const RunResult missing_file =
      run(dir, "fit --data /does/not/exist.data --schema " +
                   (kDataDir / "hepatitis.schema").string() + " --model " +
                   (dir.path / "m.model").string());
  CHECK(missing_file.exit_code == 1);
  CHECK(missing_file.err.find("aggfit: load:") != std::string::npos);

  write_toy(dir);
  std::ofstream bad_schema(dir.path / "bad.schema");
  bad_schema << "[attribute]\nname = x\nkind = ordinal\n";
  bad_schema.close();
  const RunResult schema_err =
      run(dir, "fit --data " + (dir.path / "toy.data").string() + " --schema " +
                   (dir.path / "bad.schema").string() + " --model " +
                   (dir.path / "m.model").string());
  CHECK(schema_err.exit_code == 1);
  CHECK(schema_err.err.find("aggfit: schema:") != std::string::npos);

  const RunResult bad_model =
      run(dir, "classify --model /does/not/exist.model --instance 1");
  CHECK(bad_model.exit_code == 1);
  CHECK(bad_model.err.find("aggfit: model:") != std::string::npos);
}
