// Writes the synthetic Bengali line fixture used by the pipeline tests.
//   make_fixture <out.txt> [lines] [seed]

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "synth.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: make_fixture <out.txt> [lines] [seed]\n";
    return 1;
  }
  const std::size_t lines = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1000;
  const std::uint64_t seed = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 2024;

  using translit::testkit::SyntheticText;
  SyntheticText synth(translit::default_tables(translit::ScriptId::bengali), seed);
  const auto lexicon = synth.lexicon(1500);

  std::ofstream out(argv[1], std::ios::binary);
  for (std::size_t i = 0; i < lines; ++i) {
    const double r = synth.uniform();
    std::string line;
    if (r < 0.04) {
      line = synth.below(2) ? "" : "   ";
    } else if (r < 0.12) {
      line = synth.sentence(lexicon, 1, 3);
    } else if (r < 0.18) {
      line = synth.sentence(lexicon, 8, 16);
      static const char* kMarkup[] = {"<ref>", "{{তথ্যসূত্র}}", "[[বিষয়শ্রেণী]]", "&lt;br&gt;"};
      const auto at = line.find(' ');
      line.insert(at == std::string::npos ? 0 : at + 1, std::string(kMarkup[synth.below(4)]) + " ");
    } else {
      std::string sentence = synth.sentence(lexicon, 8, 16);
      if (synth.uniform() < 0.4) sentence += " " + synth.sentence(lexicon, 4, 10);
      line = std::move(sentence);
    }
    out << line << '\n';
  }
  return out ? 0 : 1;
}
