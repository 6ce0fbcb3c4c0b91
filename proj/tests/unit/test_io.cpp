#include "lsh/corpus.hpp"
#include "lsh/error.hpp"
#include "lsh/homology.hpp"
#include "lsh/io.hpp"

#include <doctest.h>

#include <algorithm>
#include <string>

using namespace lsh;

namespace {

std::string replace_once(std::string s, const std::string& from, const std::string& to)
{
    auto at = s.find(from);
    REQUIRE(at != std::string::npos);
    return s.replace(at, from.size(), to);
}

int line_of(const std::string& s, const std::string& needle)
{
    auto at = s.find(needle);
    REQUIRE(at != std::string::npos);
    return 1 + static_cast<int>(std::count(s.begin(), s.begin() + static_cast<long>(at), '\n'));
}

}  // namespace

TEST_CASE("every corpus document survives emit and parse")
{
    for (const auto& e : corpus::entries()) {
        CAPTURE(e.name);
        std::string text = corpus::emit(e.name, 3);
        if (e.kind == "dga")
            CHECK(io::emit_dga(io::parse_dga(text)) == text);
        else if (e.kind == "filling")
            CHECK(io::emit_filling(io::parse_filling(text)) == text);
        else if (e.kind == "ainf")
            CHECK(io::emit_ainf(io::parse_ainf(text)) == text);
        else if (e.kind == "morphism")
            CHECK(io::emit_morphism(io::parse_morphism(text)) == text);
        else
            FAIL("unexpected kind " << e.kind);
    }
}

TEST_CASE("schema errors carry the line of the offending value")
{
    std::string text = corpus::emit("unknot", 2);
    std::string bad = replace_once(text, "\"grading\": 1", "\"grading\": \"1\"");
    int line = line_of(bad, "\"grading\"");
    try {
        io::parse_dga(bad);
        FAIL("accepted a string grading");
    } catch (const InputError& e) {
        CHECK(e.line() == line);
        CHECK(std::string(e.what()) == "line " + std::to_string(line) + ": \"grading\" must be an integer");
    }
}

TEST_CASE("unknown fields and numeric coefficients are rejected")
{
    std::string text = corpus::emit("dc1_vanishing", 0);
    CHECK_THROWS_WITH_AS(io::parse_dga(replace_once(text, "\"field\": \"Q\"", "\"field\": \"Q\", \"colour\": 1")),
                         doctest::Contains("unknown field \"colour\""), InputError);
    CHECK_THROWS_WITH_AS(io::parse_dga(replace_once(text, "\"coeff\": \"1\"", "\"coeff\": 1")),
                         doctest::Contains("rational string"), InputError);
    CHECK_THROWS_AS(io::parse_dga("{\"format\": \"lsh-dga/1\","), InputError);
}

TEST_CASE("partial documents are marked")
{
    CHECK(io::is_partial(io::parse_dga(corpus::emit("chekanov_c", 0))));
    CHECK_FALSE(io::is_partial(io::parse_dga(corpus::emit("chekanov_a", 0))));
}

TEST_CASE("augmentations are checked against gradings")
{
    Dga dga = corpus::chekanov_a();
    auto eps = io::parse_augmentation(
        R"({"format":"lsh-augmentation/1","values":{"a_7":"1","a_8":"-1","a_9":"1"}})", dga);
    CHECK(io::emit_augmentation(eps, dga) == io::emit_augmentation(io::parse_augmentation(io::emit_augmentation(eps, dga), dga), dga));
    CHECK_THROWS_AS(io::parse_augmentation(R"({"format":"lsh-augmentation/1","values":{"a_6":"1"}})", dga), InputError);
    CHECK_THROWS_AS(io::parse_augmentation(R"({"format":"lsh-augmentation/1","values":{"zz":"1"}})", dga), InputError);
}

TEST_CASE("Betti reports round trip through JSON")
{
    ComplexBuilder b;
    b.add(0, "x");
    b.add(1, "y");
    b.add(1, "z");
    b.add_entry(1, "y", "x", Q(1));
    GradedChainComplex c = b.finish("toy", 0, 1);
    c.complete = true;
    BettiTable t = betti(c);
    CHECK(io::parse_betti_json(io::betti_json("toy", c, t)) == t);
    CHECK(io::betti_text("toy", c, t).find("toy") != std::string::npos);
}
