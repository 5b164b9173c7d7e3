// End-to-end checks of the command-line tool, driven as a subprocess.

#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "helpers.hpp"

using namespace flexride::testutil;

namespace {

const char kNodes[] = "node_id,lat,lon\n"
                      "1,45.01,7.01\n"
                      "2,45.02,7.02\n"
                      "3,45.03,7.03\n";

const char kEdges[] = "tail,head,travel_time_s,hov\n"
                      "1,2,300,0\n"
                      "1,3,900,0\n"
                      "2,3,300,0\n";

const char kTrips[] =
    "id,ownership,capacity,deadline_s,submission_s,origin,destination,ed_s,la_s\n"
    "d1,owner,2,1800,500,1,3,1000,3000\n"
    "r1,rider,,1800,400,2,3,1200,2600\n";

struct CliFixture {
  TempDir dir;

  CliFixture() {
    dir.write("nodes.csv", kNodes);
    dir.write("edges.csv", kEdges);
    dir.write("trips.csv", kTrips);
  }

  std::string inputs() const {
    return " --nodes " + dir.file("nodes.csv").string() + " --edges " +
           dir.file("edges.csv").string() + " --trips " +
           dir.file("trips.csv").string();
  }

  // Runs the tool with stdout and stderr captured into log.txt.
  int run(const std::string& args) const {
    std::string cmd = std::string(FLEXRIDE_CLI_PATH) + " " + args + " > " +
                      dir.file("log.txt").string() + " 2>&1";
    int raw = std::system(cmd.c_str());
    REQUIRE(raw != -1);
    REQUIRE(WIFEXITED(raw));
    return WEXITSTATUS(raw);
  }

  std::string log() const { return dir.read("log.txt"); }
};

} // namespace

TEST_CASE("help exits cleanly") {
  CliFixture f;
  CHECK(f.run("--help") == 0);
  CHECK(f.log().find("solve") != std::string::npos);
  CHECK(f.run("solve --help") == 0);
}

TEST_CASE("usage problems exit with code 1") {
  CliFixture f;
  CHECK(f.run("") == 1);               // missing subcommand
  CHECK(f.run("solve") == 1);          // missing required inputs
  CHECK(f.run("frobnicate") == 1);     // unknown subcommand
  CHECK(f.run("solve" + f.inputs() + " --objective sideways") == 1);
  CHECK(f.run("solve" + f.inputs() + " --objective weighted --factor x") == 1);
  CHECK(f.run("solve" + f.inputs() + " --yen-k -3") == 1);
}

TEST_CASE("unreadable or malformed inputs exit with code 2") {
  CliFixture f;
  CHECK(f.run("solve --nodes /no/such/file.csv --edges " +
              f.dir.file("edges.csv").string() + " --trips " +
              f.dir.file("trips.csv").string()) == 2);
  CHECK(f.log().find("cannot read") != std::string::npos);

  f.dir.write("broken.csv", "tail,head,travel_time_s,hov\n1,2,-5,0\n");
  CHECK(f.run("solve --nodes " + f.dir.file("nodes.csv").string() +
              " --edges " + f.dir.file("broken.csv").string() + " --trips " +
              f.dir.file("trips.csv").string()) == 2);
}

TEST_CASE("preprocess writes the access sets") {
  CliFixture f;
  std::string out = f.dir.file("pre").string();
  CHECK(f.run("preprocess" + f.inputs() + " --out " + out) == 0);
  std::string sets = f.dir.read("pre/access_sets.json");
  CHECK(sets.find("\"d1\"") != std::string::npos);
  CHECK(sets.find("\"r1\"") != std::string::npos);
  CHECK(f.log().find("participants 2") != std::string::npos);
}

TEST_CASE("solve produces a verified solution") {
  CliFixture f;
  std::string out = f.dir.file("out").string();
  CHECK(f.run("solve" + f.inputs() +
              " --objective weighted --factor 4 --out " + out) == 0);
  CHECK(f.log().find("status optimal objective 300 matched 1 driving 1") !=
        std::string::npos);
  std::string solution = f.dir.read("out/solution.json");
  CHECK(solution.find("\"r1\"") != std::string::npos);
  CHECK(f.dir.read("out/model.lp").find("Maximize") != std::string::npos);
  CHECK(f.dir.read("out/solution.sol").find("# objective 300") !=
        std::string::npos);

  // a second run reproduces both artifacts byte for byte
  std::string out2 = f.dir.file("out2").string();
  CHECK(f.run("solve" + f.inputs() +
              " --objective weighted --factor 4 --out " + out2) == 0);
  CHECK(f.dir.read("out2/model.lp") == f.dir.read("out/model.lp"));
  CHECK(f.dir.read("out2/solution.json") == solution);
}

TEST_CASE("config file fills gaps and flags override it") {
  CliFixture f;
  f.dir.write("run.cfg", "# weighted matching\nobjective = weighted\n"
                         "factor = 4\nedge_filter = on\n");
  std::string out = f.dir.file("cfgout").string();
  CHECK(f.run("solve" + f.inputs() + " --config " +
              f.dir.file("run.cfg").string() + " --out " + out) == 0);
  CHECK(f.log().find("objective 300 matched 1") != std::string::npos);

  // the command line wins over the file: factor 2 makes matching a loss
  CHECK(f.run("solve" + f.inputs() + " --config " +
              f.dir.file("run.cfg").string() + " --factor 2 --out " + out) ==
        0);
  CHECK(f.log().find("objective 0 matched 0 driving 0") != std::string::npos);

  f.dir.write("bad.cfg", "objective = weighted\nwarp_speed = 9\n");
  CHECK(f.run("solve" + f.inputs() + " --config " +
              f.dir.file("bad.cfg").string() + " --out " + out) == 1);
  CHECK(f.log().find("warp_speed") != std::string::npos);
}

TEST_CASE("external solver commands are wired through") {
  CliFixture f;
  std::string out = f.dir.file("extout").string();
  CHECK(f.run("solve" + f.inputs() +
              " --objective weighted --factor 4 --out " + out) == 0);
  std::string builtin = f.dir.read("extout/solution.json");

  // replay the built-in answer through the external-solver path
  std::string saved = f.dir.file("saved.sol").string();
  f.dir.write("saved.sol", f.dir.read("extout/solution.sol"));
  std::string replay = f.dir.file("replay").string();
  CHECK(f.run("solve" + f.inputs() +
              " --objective weighted --factor 4 --solver-cmd 'cp " + saved +
              " {sol}' --out " + replay) == 0);
  CHECK(f.dir.read("replay/solution.json") == builtin);

  // a crashing solver is a solver failure
  CHECK(f.run("solve" + f.inputs() + " --solver-cmd 'exit 7' --out " +
              f.dir.file("crash").string()) == 3);
}

TEST_CASE("validate accepts the solver output and rejects tampering") {
  CliFixture f;
  std::string out = f.dir.file("vout").string();
  REQUIRE(f.run("solve" + f.inputs() +
                " --objective weighted --factor 4 --out " + out) == 0);
  std::string solution_path = f.dir.file("vout/solution.json").string();
  CHECK(f.run("validate" + f.inputs() + " --objective weighted --factor 4" +
              " --solution " + solution_path) == 0);
  CHECK(f.log().find("valid:") != std::string::npos);

  std::string tampered = f.dir.read("vout/solution.json");
  std::size_t pos;
  while ((pos = tampered.find("\"r1\"")) != std::string::npos) {
    tampered.replace(pos, 4, "\"zz\"");
  }
  f.dir.write("vout/tampered.json", tampered);
  CHECK(f.run("validate" + f.inputs() + " --objective weighted --factor 4" +
              " --solution " + f.dir.file("vout/tampered.json").string()) ==
        4);
  CHECK(f.log().find("invalid:") != std::string::npos);
}

TEST_CASE("oracle-check agrees with the solver on a real instance") {
  CliFixture f;
  CHECK(f.run("oracle-check" + f.inputs() + " --objective weighted --factor 4") ==
        0);
  CHECK(f.log().find("solver objective 300, enumeration objective 300") !=
        std::string::npos);
  CHECK(f.log().find("match") != std::string::npos);

  CHECK(f.run("oracle-check" + f.inputs()) == 0); // direct objective: idle wins
  CHECK(f.log().find("solver objective 0, enumeration objective 0") !=
        std::string::npos);
}

TEST_CASE("simulate writes the three report files") {
  CliFixture f;
  std::string out = f.dir.file("sim").string();
  CHECK(f.run("simulate" + f.inputs() +
              " --objective weighted --factor 4 --period 600 --start 0 "
              "--end 3600 --out " + out) == 0);
  CHECK(f.log().find("periods 6 matched 1 shifted 0") != std::string::npos);
  std::string csv = f.dir.read("sim/metrics.csv");
  CHECK(csv.starts_with("period,objective,matches,shifts,pool_size,expired\n"));
  std::string summary = f.dir.read("sim/summary.json");
  CHECK(summary.find("\"match_pct\": \"100.00\"") != std::string::npos);
  CHECK(summary.find("\"mean_objective\": \"50\"") != std::string::npos);
  CHECK(f.dir.read("sim/routes.geojson").find("\"driver\":\"d1\"") !=
        std::string::npos);

  // byte-identical on a rerun
  std::string out2 = f.dir.file("sim2").string();
  CHECK(f.run("simulate" + f.inputs() +
              " --objective weighted --factor 4 --period 600 --start 0 "
              "--end 3600 --out " + out2) == 0);
  CHECK(f.dir.read("sim2/metrics.csv") == csv);
  CHECK(f.dir.read("sim2/summary.json") == summary);
}
