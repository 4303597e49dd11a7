#include <doctest.h>

#include <sstream>

#include "robinbif/config.hpp"
#include "robinbif/errors.hpp"

using namespace robinbif;

TEST_CASE("defaults are valid") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  CHECK(load_config("").grid == 96);
}

TEST_CASE("parsing and round trip") {
  std::istringstream in("# comment\nhomotopy = polynomial\nhomotopy.h0 = 0 1\nhomotopy.h1 = 1 -1\n"
                        "nonlinearity = table\nnonlinearity.table = 0; 0; 0 1; 0 1\ngrid = 40\nnu = 0.02\n");
  const auto c = parse_config(in);
  CHECK_NOTHROW(c.validate());
  CHECK(c.grid == 40);
  CHECK(c.f_table.size() == 4);
  CHECK(c.make_nonlinearity().f(0.5, 2.0) == doctest::Approx(0.75));
  std::ostringstream out;
  write_config(out, c);
  std::istringstream again(out.str());
  std::ostringstream out2;
  write_config(out2, parse_config(again));
  CHECK(out.str() == out2.str());
}

TEST_CASE("invalid configurations name the field") {
  auto fails_with = [](const std::string& text, const std::string& field) {
    std::istringstream in(text);
    try {
      parse_config(in).validate();
    } catch (const ConfigError& e) {
      return std::string(e.what()).find(field) != std::string::npos;
    }
    return false;
  };
  CHECK(fails_with("grid = 4\n", "grid"));
  CHECK(fails_with("newton_tol = -1\n", "newton_tol"));
  CHECK(fails_with("nonlinearity = table\nnonlinearity.table = 1\n", "nonlinearity"));
  CHECK(fails_with("homotopy = polynomial\nhomotopy.h0 = 0.5 1\nhomotopy.h1 = 1 -1\n", "homotopy"));
  CHECK(fails_with("colour = blue\n", "colour"));
  CHECK(fails_with("grid = many\n", "grid"));
  CHECK(fails_with("just text\n", "expected key"));
}
