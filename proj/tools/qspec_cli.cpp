// Command-line driver. Subcommands are registered as the engine modules land;
// this stub only reports the toolkit version until then.
#include <cstdio>

int main(int argc, char** argv) {
  (void)argc;
  (void)argv;
  std::printf("qspec 0.1.0\n");
  return 0;
}
