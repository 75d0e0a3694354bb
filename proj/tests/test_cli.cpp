#include <doctest.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"

using namespace dshell;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::vector<const char*> argv{"dshell"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("dshell_test_" + name);
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, -0.6, 1.0 / 3.0, 1e-300, 123456.789, -0.0})
    CHECK(std::stod(cli::format_double(v)) == v);
  CHECK(cli::format_double(-0.0) == "0");
  CHECK(cli::format_double(2.0) == "2");
  CHECK(cli::format_double(-INFINITY) == "-inf");
}

TEST_CASE("exit codes") {
  CHECK(run({"validate"}).code == 0);
  CHECK(run({}).code == 2);
  CHECK(run({"bands", "--bogus", "1"}).code == 2);
  CHECK(run({"bands", "--format", "xml"}).code == 2);
  CHECK(run({"bands", "--samples", "1"}).code == 2);
  CHECK(run({"bands", "--kmin", "2", "--kmax", "1"}).code == 2);
  CHECK(run({"spectrum", "--format", "csv"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  // Confining coupling outside the decoupled families.
  CHECK(run({"bands", "--eta", "0", "--tau", "1.2", "--lambda", "1.6", "--mass", "1"}).code == 3);
  CHECK(run({"spectrum", "--eta", "1", "--tau", "2", "--lambda", "1", "--mass", "1"}).code == 3);
  CHECK(run({"approx", "--tau", "3", "--mass", "1"}).code == 3);
  CHECK(run({"approx", "--eta", "1", "--tau", "1", "--mass", "1", "--k", "0"}).code == 2);
}

TEST_CASE("negative values and options after the subcommand") {
  const auto a = run({"spectrum", "--tau", "-1", "--mass", "1"});
  const auto b = run({"--tau", "-1", "spectrum", "--mass", "1"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["ac"][0][1].get<double>() == doctest::Approx(-0.6));
}

TEST_CASE("config file with flag precedence") {
  const auto path = temp_file("cfg.toml");
  {
    std::ofstream f(path);
    f << "eta = 3\nmass = 1\nsamples = 5\n";
  }
  const auto a = run({"spectrum", "--config", path.string()});
  REQUIRE(a.code == 0);
  CHECK(nlohmann::json::parse(a.out)["ac"][1][0].get<double>() == doctest::Approx(5.0 / 13.0));
  const auto b = run({"spectrum", "--config", path.string(), "--eta", "1"});
  CHECK(nlohmann::json::parse(b.out)["ac"][0][1].get<double>() == doctest::Approx(-0.6));
  {
    std::ofstream f(path);
    f << "eta = 3\nunknown_key = 1\n";
  }
  CHECK(run({"spectrum", "--config", path.string()}).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("bands CSV layout and determinism") {
  const std::vector<std::string> args{"bands", "--eta", "0", "--lambda", "1", "--mass", "1",
                                      "--kmin", "-1", "--kmax", "1", "--samples", "5"};
  const auto a = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == run(args).out);
  std::istringstream is(a.out);
  std::string line;
  std::getline(is, line);
  CHECK(line == "k,z_plus,z_minus,plus_admissible,minus_admissible");
  std::vector<std::string> lines;
  while (std::getline(is, line)) lines.push_back(line);
  REQUIRE(lines.size() == 5);
  CHECK(lines[4] == "1,,,0,0");
  CHECK(lines[2] == "0,,,0,0");
  CHECK(lines[0].rfind("-1,", 0) == 0);
  CHECK(lines[0].substr(lines[0].size() - 4) == ",1,1");
}

TEST_CASE("SVG output is well-formed and carries the CSV samples") {
  const std::vector<std::string> base{"bands", "--eta", "0", "--tau", "-1", "--mass", "1", "--samples", "41"};
  auto svg_args = base;
  svg_args.insert(svg_args.end(), {"--format", "svg"});
  const auto svg = run(svg_args);
  REQUIRE(svg.code == 0);
  boost::property_tree::ptree tree;
  std::istringstream is(svg.out);
  REQUIRE_NOTHROW(boost::property_tree::read_xml(is, tree));
  const auto& root = tree.get_child("svg");
  CHECK(root.get<int>("<xmlattr>.width") == 800);
  CHECK(root.get<int>("<xmlattr>.height") == 600);
  int bands = 0, ac = 0;
  std::function<void(const boost::property_tree::ptree&)> walk = [&](const boost::property_tree::ptree& n) {
    for (const auto& [tag, child] : n) {
      const auto cls = child.get<std::string>("<xmlattr>.class", "");
      if (tag == "path" && cls == "band") {
        ++bands;
        const auto d = child.get<std::string>("<xmlattr>.d");
        CHECK(std::count(d.begin(), d.end(), 'L') + std::count(d.begin(), d.end(), 'M') == 41);
      }
      if (tag == "rect" && cls == "ac") ++ac;
      walk(child);
    }
  };
  walk(tree);
  CHECK(bands == 2);
  CHECK(ac == 2);
}

TEST_CASE("fiber, approx, resolvent-check and packet commands") {
  const auto f = run({"fiber", "--eta", "3", "--tau", "2", "--lambda", "1", "--mass", "1", "--k", "0.5"});
  REQUIRE(f.code == 0);
  const auto fj = nlohmann::json::parse(f.out);
  CHECK(fj["agree"] == true);
  CHECK(fj["eigenvalues"][0].get<double>() == doctest::Approx(-(0.5 + 2.0) / 3.0));

  const auto a = run({"approx", "--eta", "2", "--mass", "1", "--k", "0", "--eps", "1e-1,1e-2,1e-3"});
  REQUIRE(a.code == 0);
  std::istringstream is(a.out);
  std::string line;
  std::getline(is, line);
  CHECK(line == "epsilon,energy,target,abs_error");
  std::vector<double> errs;
  while (std::getline(is, line)) errs.push_back(std::stod(line.substr(line.rfind(',') + 1)));
  REQUIRE(errs.size() == 3);
  CHECK(errs[1] < errs[0]);
  CHECK(errs[2] < errs[1]);
  const auto aj = run({"approx", "--eta", "1", "--mass", "1", "--format", "json"});
  REQUIRE(aj.code == 0);
  CHECK(nlohmann::json::parse(aj.out)["monotone"] == true);

  const auto r = run({"resolvent-check", "--eta", "1.2", "--tau", "0.3", "--lambda", "-0.4", "--mass", "1", "--k", "0.5"});
  CHECK(r.code == 0);
  const auto rj = nlohmann::json::parse(r.out);
  CHECK(rj["ode_residual"].get<double>() < 1e-6);
  CHECK(rj["transmission_residual"].get<double>() < 1e-8);

  const auto p = run({"packet", "--eta", "3", "--tau", "2", "--lambda", "1", "--mass", "1", "--grid", "4", "--t", "1"});
  REQUIRE(p.code == 0);
  CHECK(std::count(p.out.begin(), p.out.end(), '\n') == 17);
}

TEST_CASE("--out writes the body to a file") {
  const auto path = temp_file("out.json");
  const auto r = run({"spectrum", "--eta", "1", "--mass", "1", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  const auto j = nlohmann::json::parse(f);
  CHECK(j["case"] == "thm_iii");
  std::filesystem::remove(path);
}
