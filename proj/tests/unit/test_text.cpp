#include <doctest.h>

#include "arena/errors.hpp"
#include "arena/structured.hpp"
#include "arena/text.hpp"
#include "arena/traits.hpp"

using namespace arena;

TEST_SUITE("text") {
  TEST_CASE("template renders named slots and literal braces") {
    text::Template t("Hello {name}, {{literal}} and {name} again {x_1}");
    CHECK(t.placeholders() == std::vector<std::string>{"name", "x_1"});
    CHECK(t.render({{"name", "Ann"}, {"x_1", "1"}}) == "Hello Ann, {literal} and Ann again 1");
  }

  TEST_CASE("unbound placeholder is a TemplateError") {
    text::Template t("a {missing} b");
    CHECK_THROWS_AS(t.render({}), TemplateError);
  }

  TEST_CASE("unused values are rejected only on request") {
    text::Template t("{a}");
    CHECK(t.render({{"a", "1"}, {"b", "2"}}) == "1");
    CHECK_THROWS_AS(t.render({{"a", "1"}, {"b", "2"}}, true), TemplateError);
  }

  TEST_CASE("substituted values are not re-expanded") {
    text::Template t("{a}");
    CHECK(t.render({{"a", "{b}"}}) == "{b}");
  }

  TEST_CASE("string helpers") {
    CHECK(text::trim("  x y \n") == "x y");
    CHECK(text::split("a,,b", ',') == std::vector<std::string>{"a", "", "b"});
    CHECK(text::split_lines("a\r\nb") == std::vector<std::string>{"a", "b"});
    CHECK(text::iequals("Defect", "dEFECT"));
    CHECK(text::starts_with_ci("Openness: 4", "openness"));
  }

  TEST_CASE("slot extraction tolerates markdown decoration") {
    const std::string reply = "### Insight:\nfirst line\nsecond line\n- **Action**: go\n";
    const auto slots = structured::extract_slots(reply, {"Insight", "Action"});
    CHECK(slots.at("Insight") == "first line\nsecond line");
    CHECK(slots.at("Action") == "go");
    CHECK_THROWS_AS(structured::require_slots(reply, {"Insight", "Thoughts"}, "reflection"), TemplateParseError);
    CHECK(structured::bare_token("**Defect.**") == "Defect");
  }

  TEST_CASE("trait codes and names") {
    CHECK(trait_code(TraitId::Agreeableness) == 'A');
    CHECK(parse_trait("neuroticism") == TraitId::Neuroticism);
    CHECK(parse_trait("E") == TraitId::Extraversion);
    CHECK_FALSE(parse_trait("X").has_value());
    for (std::size_t i = 0; i < kAllTraits.size(); ++i) CHECK(trait_index(kAllTraits[i]) == i);
  }
}
