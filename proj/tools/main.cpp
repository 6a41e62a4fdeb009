#include <string>
#include <vector>

#include "railplan/io.hpp"

int main(int argc, char** argv) {
  return railplan::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
