#include <doctest.h>

#include "flg/surface.hpp"
#include "oracles.hpp"

using namespace flg;

namespace {

const GroupContext& K4() { return SurfacePresentation::instance().context(); }

Word k(const char* s) { return parse_word(s, K4()); }
Word f(const char* s) { return parse_word(s, GroupContext(2)); }

Word random_relator_product(std::mt19937_64& rng) {
  const Word& r = SurfacePresentation::instance().relator();
  Word out;
  const int count = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < count; ++i) {
    const Word g = oracle::random_word(rng, 4, 6);
    out = multiply(out, conjugate((rng() & 1) ? r : inverse(r), g));
  }
  return out;
}

}  // namespace

TEST_SUITE("surface") {
  TEST_CASE("presentation") {
    const auto& k4 = SurfacePresentation::instance();
    CHECK(k4.context().rank() == 4);
    CHECK(k4.relator() == k("aabbccdd"));
    CHECK(k4.symmetrized().size() == 16);
    for (const Word& s : k4.symmetrized()) {
      CHECK(s.size() == 8);
      CHECK(are_conjugate(s, k4.relator()) != are_conjugate(s, inverse(k4.relator())));
    }
  }

  TEST_CASE("dehn reduction examples") {
    CHECK(dehn_reduce(k("aabbccdd")).final.empty());
    CHECK(dehn_reduce(k("ccddaabb")).final.empty());
    const auto t = dehn_reduce(k("abcd"));
    CHECK(t.final == k("abcd"));
    CHECK(t.steps.empty());
    CHECK(dehn_reduce(Word{}).final.empty());
    CHECK_THROWS_AS(dehn_reduce(parse_word("e", GroupContext(5))), Error);
  }

  TEST_CASE("dehn steps replace more than half a relator") {
    const auto t = dehn_reduce(k("aabbccdA"));
    REQUIRE_FALSE(t.steps.empty());
    for (const auto& s : t.steps) {
      CHECK(s.replaced.size() >= 5);
      CHECK(s.replaced.size() + s.replacement.size() == 8);
    }
    CHECK(t.final.size() < 8);
  }

  TEST_CASE("triviality") {
    std::mt19937_64 rng(61);
    const Word& r = SurfacePresentation::instance().relator();
    for (int trial = 0; trial < 100; ++trial) CHECK(is_trivial_in_K(conjugate(r, oracle::random_word(rng, 4, 8))));
    CHECK_FALSE(is_trivial_in_K(k("a")));
    CHECK_FALSE(is_trivial_in_K(k("abcd")));
    CHECK(is_trivial_in_K(Word{}));
  }

  TEST_CASE("products of relator conjugates reduce to the identity") {
    std::mt19937_64 rng(62);
    for (int trial = 0; trial < 1000; ++trial) {
      const Word x = random_relator_product(rng);
      CHECK_MESSAGE(dehn_reduce(x).final.empty(), to_string(x));
    }
  }

  TEST_CASE("dehn traces are consistent") {
    std::mt19937_64 rng(63);
    for (int trial = 0; trial < 300; ++trial) {
      const Word x = multiply(random_relator_product(rng), oracle::random_word(rng, 4, 6, 1));
      const auto t = dehn_reduce(x);
      CHECK(t.start == x);
      CHECK(t.final.size() <= x.size());
      // final is conjugate in K to x: the difference dies under Dehn
      const Word diff = multiply(conjugate(x, t.conjugator), inverse(t.final));
      CHECK(dehn_reduce(diff).final.empty());
    }
  }

  TEST_CASE("pieces") {
    CHECK(max_piece_length() == 1);
    CHECK(6 * max_piece_length() < 8);
  }

  TEST_CASE("abelianization") {
    const FgAbelianGroup g = surface_abelianization();
    CHECK(g.structure() == InvariantFactors{3, {2}});
    const auto e = exponent_vector(k("abcd"), K4());
    const std::vector<Integer> v(e.begin(), e.end());
    CHECK(g.element_order(v) == 2);
    CHECK(g.coordinates(v).torsion == std::vector<Integer>{1});
  }

  TEST_CASE("retraction examples") {
    const Retraction r0 = retraction(0);
    CHECK(r0.images[2] == f("B"));
    CHECK(r0.images[3] == f("A"));
    CHECK(apply_retraction(r0, k("abcd")).empty());
    const Retraction r1 = retraction(1);
    const Word img = apply_retraction(r1, k("abcd"));
    CHECK(img.size() == 10);
    CHECK(img == f("abaabABBAA"));
    CHECK(relator_image_trivial(r1.images));
    const std::array<Word, 4> bad{f("a"), f("b"), f("a"), f("a")};
    CHECK_FALSE(relator_image_trivial(bad));
    for (int m = 0; m <= 3; ++m) CHECK(apply_retraction(retraction(m), k("a")) == f("a"));
    CHECK_THROWS_AS(retraction(-1), Error);
  }

  TEST_CASE("every retraction up to m = 10 is valid") {
    for (int m = 0; m <= 10; ++m) {
      const Retraction r = retraction(m);
      CHECK(r.m == m);
      CHECK(relator_image_trivial(r.images));
      CHECK(fixes_free_factor(r.images));
      CHECK(apply_retraction(r, SurfacePresentation::instance().relator()).empty());
    }
  }

  TEST_CASE("retractions are homomorphisms") {
    std::mt19937_64 rng(64);
    for (int trial = 0; trial < 1000; ++trial) {
      const Retraction r = retraction(static_cast<int>(rng() % 4));
      const Word u = oracle::random_word(rng, 4, 8), v = oracle::random_word(rng, 4, 8);
      CHECK(apply_retraction(r, multiply(u, v)) == multiply(apply_retraction(r, u), apply_retraction(r, v)));
    }
  }

  TEST_CASE("separating retractions") {
    const std::vector<Word> s1{k("a")};
    CHECK(find_separating_retraction(s1) == 0);
    const std::vector<Word> s2{k("abcd")};
    CHECK(find_separating_retraction(s2) == 1);
    const std::vector<Word> s3{SurfacePresentation::instance().relator()};
    try {
      find_separating_retraction(s3);
      FAIL("expected TrivialElement");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::TrivialElement);
    }
    const std::vector<Word> s4{k("abcd"), k("ab")};
    CHECK(find_separating_retraction(s4) == 1);
    CHECK_FALSE(find_separating_retraction(s2, 0));
  }
}
