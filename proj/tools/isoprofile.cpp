#include <cstdio>

int main() {
  std::puts("isoprofile: subcommands not wired up yet");
  return 64;
}
