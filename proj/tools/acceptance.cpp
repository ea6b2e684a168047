#include <cstring>
#include <iostream>

#include "tropmod/corpus.hpp"

// One PASS/FAIL line per acceptance criterion; --verbose adds the individual checks,
// --strict makes any FAIL an error exit.
int main(int argc, char** argv) {
  bool verbose = false, strict = false;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--verbose")) verbose = true;
    else if (!std::strcmp(argv[i], "--strict")) strict = true;
    else {
      std::cerr << "usage: tropmod_acceptance [--verbose] [--strict]\n";
      return 2;
    }
  }
  int failed = 0;
  for (int id = 1; id <= 10; ++id) {
    auto r = tropmod::run_acceptance_check(id);
    std::cout << (r.pass ? "PASS" : "FAIL") << " " << id << " " << r.name << "\n";
    if (verbose || !r.pass)
      for (auto& d : r.details) std::cout << "    " << d << "\n";
    std::cout.flush();
    failed += !r.pass;
  }
  std::cout << (10 - failed) << "/10 criteria pass\n";
  return strict && failed ? 1 : 0;
}
