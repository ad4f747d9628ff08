#ifndef OIEROBUST_TESTS_FIXTURES_HPP
#define OIEROBUST_TESTS_FIXTURES_HPP

#include <string>

#include "oierobust/clique_tools.hpp"

namespace oierobust::testing {

inline SentenceEntry sent(const std::string& id, const std::string& text) {
  return {id, text, std::nullopt, {}};
}

// The worked example: p1 and p4 are the closest pair, their score sums are
// 136.9 and 158.7.
inline ParaphraseSet regiment_example() {
  ParaphraseSet set;
  set.original = sent("ori",
                      "In 1840, he was appointed to command his regiment, a "
                      "post he held for nearly fourteen years.");
  set.paraphrases = {
      sent("p1", "1840, the regiment's commander, which he held for nearly 14 years."),
      sent("p2", "In 1840 he took command of the regiment and held it for nearly 14 years."),
      sent("p3", "When he was 14 years old , he became a member of the regiment ."),
      sent("p4", "1840, the command of the regiment, which he held for nearly 14 years."),
      sent("p5", "The regiment, then, in 1840, the rank of captain, which he held for nearly 14 years."),
  };
  //            o      p1     p2     p3     p4     p5
  set.score_matrix = ScoreMatrix{
      {100.0, 20.0, 15.0, 12.0, 22.0, 19.0},
      {20.0, 100.0, 25.0, 10.0, 60.0, 21.9},
      {15.0, 25.0, 100.0, 8.0, 30.0, 18.0},
      {12.0, 10.0, 8.0, 100.0, 12.0, 9.0},
      {22.0, 60.0, 30.0, 12.0, 100.0, 34.7},
      {19.0, 21.9, 18.0, 9.0, 34.7, 100.0},
  };
  return set;
}

}  // namespace oierobust::testing

#endif  // OIEROBUST_TESTS_FIXTURES_HPP
