#include <gtest/gtest.h>

#include <cstring>
#include <random>

#include <condorcet/culture_io.hpp>

#include "oracles.hpp"

using namespace condorcet;

namespace {

bool bit_identical(const Culture& a, const Culture& b) {
    if (a.m() != b.m())
        return false;
    return std::memcmp(a.probs().data(), b.probs().data(), a.size() * sizeof(double)) == 0;
}

} // namespace

TEST(CultureIo, OrderFormatting) {
    EXPECT_EQ(format_order(RankOrder({0, 2, 1})), "0-2-1");
    EXPECT_EQ(parse_order("3-0-2-1"), RankOrder({3, 0, 2, 1}));
    EXPECT_THROW((void)parse_order("0-0-1"), ParseError);
    EXPECT_THROW((void)parse_order("0--1"), ParseError);
    EXPECT_THROW((void)parse_order("0-x-1"), ParseError);
}

TEST(CultureIo, RoundTripIsBitIdentical) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const int m = 2 + trial % 4;
        const Culture c(m, oracle::random_culture(rng, factorial(m), 0.2));
        EXPECT_TRUE(bit_identical(c, culture_from_csv(culture_to_csv(c))));
        const auto reparsed = nlohmann::json::parse(culture_to_json(c).dump());
        EXPECT_TRUE(bit_identical(c, culture_from_json(reparsed)));
    }
}

TEST(CultureIo, CsvSixRows) {
    const std::string text =
        "order,prob\n0-1-2,0.1\n0-2-1,0.2\n1-0-2,0.3\n1-2-0,0.1\n2-0-1,0.2\n2-1-0,0.1\n";
    const Culture c = culture_from_csv(text, 3);
    EXPECT_EQ(c.m(), 3);
    EXPECT_DOUBLE_EQ(c.prob(2), 0.3);
}

TEST(CultureIo, CsvRowsMayComeInAnyOrder) {
    const std::string text =
        "order,prob\r\n2-1-0,0.1\r\n0-1-2,0.1\r\n0-2-1,0.2\r\n1-0-2,0.3\r\n1-2-0,0.1\r\n2-0-1,0.2\r\n";
    const Culture c = culture_from_csv(text);
    EXPECT_DOUBLE_EQ(c.prob(5), 0.1);
    EXPECT_DOUBLE_EQ(c.prob(0), 0.1);
}

TEST(CultureIo, CsvErrorsNameTheLocation) {
    auto message = [](const std::string& text, int m = 3) {
        try {
            (void)culture_from_csv(text, m, "in.csv");
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    const std::string deficit =
        message("order,prob\n0-1-2,0.1\n0-2-1,0.2\n1-0-2,0.3\n1-2-0,0.1\n2-0-1,0.2\n2-1-0,0.099\n");
    EXPECT_NE(deficit.find("deficit"), std::string::npos) << deficit;

    const std::string dup = message("order,prob\n0-1-2,0.5\n0-1-2,0.5\n");
    EXPECT_NE(dup.find("in.csv:3"), std::string::npos) << dup;
    EXPECT_NE(dup.find("duplicate"), std::string::npos) << dup;

    const std::string negative =
        message("order,prob\n0-1-2,-0.1\n0-2-1,0.3\n1-0-2,0.3\n1-2-0,0.1\n2-0-1,0.2\n2-1-0,0.2\n");
    EXPECT_NE(negative.find("negative"), std::string::npos) << negative;

    const std::string missing = message("order,prob\n0-1-2,0.5\n0-2-1,0.5\n");
    EXPECT_NE(missing.find("expected 6 rows"), std::string::npos) << missing;

    const std::string bad_prob = message("order,prob\n0-1-2,abc\n");
    EXPECT_NE(bad_prob.find("in.csv:2: field 'prob'"), std::string::npos) << bad_prob;

    const std::string wrong_m = message("order,prob\n0-1-2-3,1\n");
    EXPECT_NE(wrong_m.find("field 'order'"), std::string::npos) << wrong_m;

    EXPECT_NE(message("prob,order\n").find("header"), std::string::npos);
}

TEST(CultureIo, JsonErrors) {
    EXPECT_THROW((void)culture_from_json(nlohmann::json::parse(R"({"m": 3, "probs": [0.5, 0.5]})")),
                 ParseError);
    EXPECT_THROW((void)culture_from_json(nlohmann::json::parse(R"({"probs": [1]})")), ParseError);
    EXPECT_THROW((void)culture_from_json(nlohmann::json::parse(R"({"m": 2, "probs": [0.5, 0.5]})"), 3),
                 ParseError);
    EXPECT_THROW((void)culture_from_json(nlohmann::json::parse(R"({"m": 2, "probs": [0.7, 0.7]})")),
                 ParseError);
    const Culture c = culture_from_json(nlohmann::json::parse(R"({"m": 2, "probs": [0.25, 0.75]})"));
    EXPECT_DOUBLE_EQ(c.prob(1), 0.75);
}

TEST(CultureIo, SampleFilesLoad) {
    const Culture c7 = load_culture_file(std::string(CONDORCET_SAMPLES_DIR) + "/case7.csv", 3);
    EXPECT_DOUBLE_EQ(c7.prob(2), 0.4);
    const Culture dual = load_culture_file(std::string(CONDORCET_SAMPLES_DIR) + "/dual3.json", 3);
    EXPECT_TRUE(is_dual_culture(dual));
    EXPECT_THROW((void)load_culture_file("/nonexistent/culture.csv"), ParseError);
}
