// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <cstdio>
#include <cstring>

#include "qpg/acceptance.hpp"

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 2 && std::strcmp(argv[1], "--only") == 0) only = std::atoi(argv[2]);
  bool all = true;
  for (const auto& c : qpg::acceptance::criteria()) {
    if (only && c.id != only) continue;
    const auto r = qpg::acceptance::run(c);
    all = all && r.passed;
    std::printf("[%s] criterion %2d: %s (%.1fs)", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds);
    for (const auto& note : r.notes) std::printf(" | %s", note.c_str());
    std::printf("\n");
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
