// Writes the bundled corpus: NAME.group and NAME.design for every instance.

#include <filesystem>
#include <iostream>

#include "corpus.hpp"

int main(int argc, char **argv)
{
  if (argc != 2) {
    std::cerr << "usage: make_corpus <output-dir>\n";
    return 2;
  }
  std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  try {
    for (auto const &inst : lpd::corpus::instances()) {
      lpd::write_text((dir / (inst.name + ".group")).string(),
                      lpd::format_group(inst.group, inst.comment));
      lpd::write_text((dir / (inst.name + ".design")).string(),
                      lpd::format_design(inst.design, inst.comment));
      std::cout << inst.name << '\n';
    }
  } catch (lpd::Error const &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
