// Regenerates data/catalog.json from the embedded catalog entries.

#include <fstream>
#include <iostream>

#include "iiaflow/catalog.hpp"

int main(int argc, char** argv) {
  std::string path = argc > 1 ? argv[1] : "data/catalog.json";
  std::ofstream out(path);
  if (!out.good()) {
    std::cerr << "cannot write " << path << "\n";
    return 1;
  }
  out << iiaflow::catalog::to_json().dump(2) << "\n";
  std::cout << "wrote " << path << "\n";
  return 0;
}
