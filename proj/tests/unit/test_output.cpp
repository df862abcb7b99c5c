#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "axelrod_lab/errors.hpp"
#include "axelrod_lab/output.hpp"

using namespace axelrod;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "axelrod_lab_output_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("formats") {
  CHECK(io::parse_format("csv") == io::Format::csv);
  CHECK(io::parse_format("jsonl") == io::Format::jsonl);
  CHECK_THROWS_AS(io::parse_format("xml"), PreconditionError);
  CHECK(io::format_real(0.1) == "0.1");
  CHECK(io::format_real(1.0 / 3.0, 4) == "0.3333");
}

TEST_CASE("csv table has a config line, a header and rows") {
  const auto path = scratch("t.csv");
  {
    io::TableWriter w(path.string(), io::Format::csv, {"a", "b", "c"}, {{"seed", 3}});
    w.row({std::int64_t{-1}, 0.25, std::string("x")});
    w.row({std::uint64_t{7}, true, 1e-12});
    CHECK_THROWS(w.row({std::int64_t{1}}));
  }
  CHECK(slurp(path) == "# config: {\"seed\":3}\na,b,c\n-1,0.25,x\n7,1,1e-12\n");
}

TEST_CASE("jsonl table starts with the config record") {
  const auto path = scratch("t.jsonl");
  {
    io::TableWriter w(path.string(), io::Format::jsonl, {"a", "b"}, {{"seed", 3}});
    w.row({std::int64_t{2}, std::string("y")});
  }
  CHECK(slurp(path) == "{\"config\":{\"seed\":3}}\n{\"a\":2,\"b\":\"y\"}\n");
}

TEST_CASE("event log fields") {
  const auto path = scratch("events.jsonl");
  {
    io::EventLog log(path.string(), {{"seed", 1}});
    EventRecord ev;
    ev.time = 0.5;
    ev.target = 4;
    ev.feature = 1;
    ev.direction = -1;
    ev.uniform = 0.25;
    ev.active = true;
    log.write(ev);
  }
  CHECK(slurp(path) ==
        "{\"config\":{\"seed\":1}}\n{\"t\":0.5,\"x\":4,\"i\":2,\"B\":-1,\"U\":0.25,\"active\":true}\n");
}

TEST_CASE("unwritable paths are reported") {
  CHECK_THROWS(io::TableWriter("/nonexistent-dir/x.csv", io::Format::csv, {"a"}, {}));
}
