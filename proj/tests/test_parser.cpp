#include <random>

#include <gtest/gtest.h>

#include "awf/parse.hpp"

using namespace awf;

TEST(Parser, PlainWord)
{
    const auto p = parse_word("a b* b");
    ASSERT_FALSE(p.free);
    EXPECT_EQ(p.plain, (Word{SUq2Gen::a, SUq2Gen::b_star, SUq2Gen::b}));
    EXPECT_EQ(canonical(p), "a b* b");
}

TEST(Parser, DotsAndNewlinesSeparate)
{
    EXPECT_EQ(canonical(parse_word("a.b*\n  b")), "a b* b");
    EXPECT_EQ(canonical(parse_word("")), "1");
    EXPECT_EQ(canonical(parse_word("1")), "1");
}

TEST(Parser, FreeWord)
{
    const auto p = parse_word("F1:S . F2:b b*");
    ASSERT_TRUE(p.free);
    ASSERT_EQ(p.letters.size(), 2u);
    EXPECT_EQ(p.letters[0].factor, 1u);
    EXPECT_EQ(p.letters[0].word, Word{ShiftGen{false}});
    EXPECT_EQ(p.letters[1].word, (Word{SUq2Gen::b, SUq2Gen::b_star}));
    EXPECT_EQ(canonical(p), "F1:S . F2:b b*");
    EXPECT_EQ(canonical(parse_word("F1:S F2:b.b* F1:1")), "F1:S . F2:b b* . F1:1");
}

TEST(Parser, IndexedTokens)
{
    EXPECT_EQ(parse_word("e(1,2) e(2,0)").plain, (Word{MatrixUnit{1, 2}, MatrixUnit{2, 0}}));
    EXPECT_EQ(parse_word("e(1,2) e(2,0)").plain, (Word{MatrixUnit{1, 2}, MatrixUnit{2, 0}}));
    EXPECT_EQ(canonical(parse_word("t(0,3;+2)")), "t(0,3;2)");
}

namespace {

void expect_error(const std::string& text, std::size_t line, std::size_t col, const std::string& fragment)
{
    try {
        parse_word(text);
        ADD_FAILURE() << "no error for '" << text << "'";
    } catch (const parse_error& e) {
        EXPECT_EQ(e.line(), line) << text;
        EXPECT_EQ(e.column(), col) << text;
        EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
}

}  // namespace

TEST(Parser, Errors)
{
    expect_error("e(1,x)", 1, 5, "malformed index");
    expect_error("a c", 1, 3, "unknown token 'c'");
    expect_error("a ab", 1, 3, "unknown token 'ab'");
    expect_error("a\n  S", 2, 3, "cannot mix");
    expect_error("F1:S . F2:a S", 1, 13, "cannot mix");
    expect_error("F1:S . F1:a", 1, 8, "factor F1");
    expect_error("F1: . F2:a", 1, 4, "empty letter");
    expect_error("F1:S . F0:b", 1, 9, "start at 1");
    expect_error("a F1:S", 1, 3, "prefix inside a plain word");
    expect_error("e(1,2", 1, 6, "to close");
    expect_error("t(1,2,3)", 1, 6, "before the shift power");
    expect_error("a 1", 1, 3, "stand alone");
    expect_error("12", 1, 1, "unknown token '12'");
}

TEST(Parser, RoundTripRandomWords)
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> alg(0, 3), len(0, 7), idx(0, 20), pw(-9, 9), gen(0, 3);
    for (int t = 0; t < 1000; ++t) {
        Word w;
        const int a = alg(rng);
        for (int i = len(rng); i > 0; --i) {
            switch (a) {
            case 0: w.push_back(static_cast<SUq2Gen>(gen(rng))); break;
            case 1: w.push_back(ShiftGen{gen(rng) % 2 == 0}); break;
            case 2: w.push_back(MatrixUnit{static_cast<std::size_t>(idx(rng)), static_cast<std::size_t>(idx(rng))}); break;
            default:
                w.push_back(TensorUnit{static_cast<std::size_t>(idx(rng)), static_cast<std::size_t>(idx(rng)), pw(rng)});
            }
        }
        const std::string text = canonical(w);
        const auto back = parse_word(text);
        EXPECT_EQ(back.plain, w) << text;
        EXPECT_EQ(canonical(back), text);
    }
}
