#include <cstdio>

#include "swvlasov.h"

int main(int argc, char** argv) {
  (void)argc;
  (void)argv;
  std::printf("swvlasov %s\n", swv_version());
  std::printf("usage: swvlasov run <config> --out <dir>\n");
  std::printf("       swvlasov convergence <config> --nx 50,100,200,400\n");
  std::printf("       swvlasov verify\n");
  return 0;
}
