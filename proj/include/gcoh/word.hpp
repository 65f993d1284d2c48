#ifndef GCOH_WORD_HPP
#define GCOH_WORD_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace gcoh {

// Letter k > 0 is generator k (1-based), k < 0 its inverse. No zero letters.
using Word = std::vector<int>;

Word invert_word(const Word& w);
Word free_reduce(Word w);
Word concat(const Word& a, const Word& b);
std::string word_to_string(const Word& w);

// Exponent sum of generator g (1-based) in w.
long long exponent_sum(const Word& w, std::size_t g);

struct Presentation {
  std::size_t generator_count = 0;
  std::vector<Word> relators;
  std::string label;

  // Throws InputError on zero letters or out-of-range generators.
  void validate() const;
};

// G = <a, b | a^2 b = b a^2>, relator a a b a^-1 a^-1 b^-1.
Presentation paper_group_presentation();

}  // namespace gcoh

#endif
