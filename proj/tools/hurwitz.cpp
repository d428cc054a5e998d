#include <csignal>
#include <iostream>

#include "hurwitz/cli.hpp"

namespace {

extern "C" void on_interrupt(int) { hurwitz::cli::cancel_flag().store(true); }

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, on_interrupt);
  std::signal(SIGTERM, on_interrupt);
  return hurwitz::cli::run(argc, argv, std::cout, std::cerr);
}
