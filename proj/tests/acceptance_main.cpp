#include "walkgroup/acceptance.hpp"

#include <cstring>

int main(int argc, char** argv) {
  bool fast = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--fast") == 0) fast = true;
  return walkgroup::print_acceptance(walkgroup::run_acceptance(fast));
}
