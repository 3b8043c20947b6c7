#include <charconv>
#include <filesystem>
#include <limits>

#include <doctest.h>

#include "cochlea/io.hpp"

using namespace cochlea::io;

TEST_CASE("numbers round-trip exactly") {
  for (double v : {0.1, -1.0 / 3.0, 6.02214076e23, 5e-324, 0.0019095332846960531,
                   std::numeric_limits<double>::max()}) {
    const std::string text = format_number(v);
    double back = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), back);
    CHECK(back == v);
  }
  CHECK(format_number(42LL) == "42");
}

TEST_CASE("csv quoting and parsing") {
  CsvTable t;
  t.header = {"name", "value", "note"};
  t.add_row({"a", format_number(1.5), "plain"});
  t.add_row({"b,c", format_number(-2.0), "say \"hi\""});
  t.add_row({"d", format_number(3.0), "two\nlines"});
  const std::string text = to_csv(t);
  CHECK(text.substr(0, 16) == "name,value,note\r");
  CHECK(text.find("\"b,c\"") != std::string::npos);
  CHECK(text.find("\"say \"\"hi\"\"\"") != std::string::npos);

  const CsvTable back = parse_csv(text);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
  CHECK(back.number(1, "value") == -2.0);
  CHECK_THROWS(back.column("missing"));
  CHECK_THROWS(back.number(0, "name"));
  CHECK_THROWS(t.add_row({"short"}));
  CHECK_THROWS(parse_csv("a,b\r\n\"open"));
  CHECK_THROWS(parse_csv("a,b\r\n1,2,3\r\n"));
}

TEST_CASE("files") {
  const auto dir = std::filesystem::temp_directory_path() / "cochlea_io_test";
  std::filesystem::create_directories(dir);
  CsvTable t;
  t.header = {"x"};
  t.add_row({"1"});
  write_csv(dir / "t.csv", t);
  CHECK(read_csv(dir / "t.csv").rows == t.rows);
  write_json(dir / "t.json", {{"k", 1}});
  CHECK(read_text(dir / "t.json").find("\"k\"") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
