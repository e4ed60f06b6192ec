// Runs every acceptance criterion at its stated tolerance; one line per criterion.
#include <cstdio>
#include <string>

#include "acceptance.hpp"

int main(int argc, char** argv) {
  namespace v = anholkit::verify;
  const std::string suite = argc > 1 ? argv[1] : "all";
  v::AcceptanceOptions opts;
  bool pass = true;
  for (int id : v::suite_members(suite)) {
    const auto r = v::run_criterion(id, opts);
    std::printf("%s\n", v::format_line(r).c_str());
    for (const auto& c : r.checks)
      if (!c.pass)
        std::printf("      failed: %s measured %.6g %s %.6g\n", c.name.c_str(), c.measured, c.control ? ">" : "<=",
                    c.tolerance);
    std::fflush(stdout);
    pass = pass && r.pass;
  }
  std::printf("%s\n", pass ? "acceptance: all criteria passed" : "acceptance: FAILED");
  return pass ? 0 : 1;
}
