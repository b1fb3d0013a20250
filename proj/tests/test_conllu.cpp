#include <doctest.h>

#include "deplabel/conllu.hpp"
#include "testutil.hpp"

using namespace deplabel;
using conllu::ParseError;
using conllu::ParseStats;
using conllu::Sentence;

namespace {

std::string row(int id, const std::string& form, const std::string& upos, int head,
                const std::string& deprel) {
  return std::to_string(id) + "\t" + form + "\t_\t" + upos + "\t_\t_\t" +
         std::to_string(head) + "\t" + deprel + "\t_\t_\n";
}

}  // namespace

TEST_CASE("minimal two-token sentence") {
  std::string text = row(1, "Ons", "PRON", 2, "nsubj") + row(2, "demokrasie", "NOUN", 0, "root");
  auto sentences = conllu::parse(text, /*strict=*/true);
  REQUIRE(sentences.size() == 1);
  REQUIRE(sentences[0].size() == 2);
  CHECK(sentences[0].tokens[0].head == 2);
  CHECK(sentences[0].tokens[1].head == 0);
  CHECK(sentences[0].tokens[0].form == "Ons");
  CHECK(sentences[0].tokens[1].upos == "NOUN");
}

TEST_CASE("multiword range rows are skipped and counted") {
  std::string text = row(1, "a", "X", 2, "dep");
  text += "3-4\tdu\t_\t_\t_\t_\t_\t_\t_\t_\n";
  text += row(2, "b", "X", 0, "root");
  ParseStats stats;
  auto sentences = conllu::parse(text, true, &stats);
  REQUIRE(sentences.size() == 1);
  CHECK(sentences[0].size() == 2);
  CHECK(stats.multiword_skipped == 1);
  CHECK(stats.empty_node_skipped == 0);
}

TEST_CASE("empty-node rows are skipped and counted") {
  std::string text = row(1, "a", "X", 0, "root");
  text += "1.1\tghost\t_\t_\t_\t_\t_\t_\t_\t_\n";
  ParseStats stats;
  auto sentences = conllu::parse(text, true, &stats);
  CHECK(sentences.size() == 1);
  CHECK(stats.empty_node_skipped == 1);
}

TEST_CASE("errors carry line numbers") {
  SUBCASE("head out of range") {
    std::string text = row(1, "a", "X", 9, "dep") + row(2, "b", "X", 0, "root");
    try {
      conllu::parse(text, false);
      FAIL("expected ParseError");
    } catch (const ParseError& error) {
      CHECK(error.line() == 1);
      CHECK(std::string(error.what()).find("head out of range") != std::string::npos);
    }
  }
  SUBCASE("malformed column count") {
    try {
      conllu::parse("1\tonly\tthree\n", false);
      FAIL("expected ParseError");
    } catch (const ParseError& error) {
      CHECK(error.line() == 1);
    }
  }
  SUBCASE("non-integer head") {
    std::string text = "1\ta\t_\tX\t_\t_\tnope\tdep\t_\t_\n";
    CHECK_THROWS_AS(conllu::parse(text, false), ParseError);
  }
  SUBCASE("self head") {
    CHECK_THROWS_AS(conllu::parse(row(1, "a", "X", 1, "dep"), false), ParseError);
  }
  SUBCASE("non-contiguous ids") {
    std::string text = row(1, "a", "X", 0, "root");
    text += "3\tb\t_\tX\t_\t_\t1\tdep\t_\t_\n";
    CHECK_THROWS_AS(conllu::parse(text, false), ParseError);
  }
}

TEST_CASE("strict mode rejects cycles, non-strict accepts them") {
  std::string text = row(1, "a", "X", 2, "dep") + row(2, "b", "X", 1, "dep");
  CHECK_THROWS_AS(conllu::parse(text, /*strict=*/true), ParseError);
  auto sentences = conllu::parse(text, /*strict=*/false);
  REQUIRE(sentences.size() == 1);
  CHECK(sentences[0].tokens[0].head == 2);
  CHECK(sentences[0].tokens[1].head == 1);
}

TEST_CASE("strict mode accepts multiple root children") {
  std::string text = row(1, "a", "X", 0, "root") + row(2, "b", "X", 0, "root");
  CHECK(conllu::parse(text, true).size() == 1);
}

TEST_CASE("write: empty input, comments, unused columns") {
  CHECK(conllu::write({}) == "");

  Sentence s;
  s.comments = {"# text = hi"};
  conllu::Token tok;
  tok.id = 1;
  tok.form = "hi";
  tok.upos = "INTJ";
  tok.head = 0;
  tok.deprel = "root";
  s.tokens.push_back(tok);
  std::string text = conllu::write({s});
  CHECK(text == "# text = hi\n1\thi\t_\tINTJ\t_\t_\t0\troot\t_\t_\n\n");
}

TEST_CASE("parse-write-parse fixpoint keeps the five live columns and comments") {
  std::string text =
      "# sent_id = 1\n" + row(1, "Ons", "PRON", 2, "nsubj") +
      row(2, "demokrasie", "NOUN", 4, "nsubj") + row(3, "is", "AUX", 4, "cop") +
      row(4, "gesond", "ADJ", 0, "root") + row(5, ".", "PUNCT", 3, "punct");
  auto first = conllu::parse(text, false);
  std::string written = conllu::write(first);
  auto second = conllu::parse(written, false);
  CHECK(first == second);
  CHECK(conllu::write(second) == written);
}

TEST_CASE("lemma/xpos/feats/deps/misc are normalized to underscore on write") {
  std::string text = "1\tword\tlemma\tNOUN\txpos\tCase=Nom\t0\troot\t0:root\tSpaceAfter=No\n";
  auto sentences = conllu::parse(text, true);
  std::string written = conllu::write(sentences);
  CHECK(written == "1\tword\t_\tNOUN\t_\t_\t0\troot\t_\t_\n\n");
}

TEST_CASE("windows line endings are tolerated") {
  std::string text = "1\ta\t_\tX\t_\t_\t0\troot\t_\t_\r\n\r\n";
  auto sentences = conllu::parse(text, true);
  REQUIRE(sentences.size() == 1);
  CHECK(sentences[0].tokens[0].form == "a");
}

TEST_CASE("tree_of and with_tree round-trip") {
  auto bank = testutil::synthetic_treebank(10, 7);
  for (const Sentence& sentence : bank) {
    DepTree tree = conllu::tree_of(sentence);
    CHECK(is_valid(tree));
    Sentence back = conllu::with_tree(sentence, tree);
    CHECK(back == sentence);
  }
}
