/*
 * Copyright 2026 The FormForge Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "formforge/html.hpp"

#include <gtest/gtest.h>

#include "support/generators.hpp"

namespace formforge::html {
namespace {

std::vector<std::string> tags(const Document& doc) {
  std::vector<std::string> out;
  for (const Node* e : doc.elements()) out.push_back(e->tag());
  return out;
}

TEST(HtmlTest, FormWithOneInput) {
  const Document doc = parse_document(R"(<form><input id="a"></form>)");
  EXPECT_EQ(tags(doc), (std::vector<std::string>{"form", "input"}));
  EXPECT_EQ(doc.elements()[1]->attr("id"), "a");
  EXPECT_EQ(doc.elements()[1]->parent(), doc.elements()[0]);
}

TEST(HtmlTest, EmptyInputGivesEmptyTree) {
  const Document doc = parse_document("");
  EXPECT_TRUE(doc.elements().empty());
  EXPECT_EQ(serialize(doc.root()), "");
}

TEST(HtmlTest, UnclosedSoupKeepsTruncatedTag) {
  const Document doc = parse_document("<div><input name=x");
  EXPECT_EQ(tags(doc), (std::vector<std::string>{"div", "input"}));
  EXPECT_EQ(doc.elements()[1]->attr("name"), "x");
}

TEST(HtmlTest, AttributesAreLowerCasedDecodedAndFirstWins) {
  const Document doc = parse_document(R"(<INPUT Name="a&amp;b" NAME="second" value='x&quot;y' required>)");
  const Node& input = *doc.elements().front();
  EXPECT_EQ(input.tag(), "input");
  EXPECT_EQ(input.attr("name"), "a&b");
  EXPECT_EQ(input.attr("value"), "x\"y");
  EXPECT_EQ(input.attr("required"), "");
  EXPECT_FALSE(input.attr("missing").has_value());
}

TEST(HtmlTest, RawTextBodiesAreNotParsed) {
  const Document doc =
      parse_document("<script>if (a < b) { x = '<input>'; }</script><textarea><input name=q></textarea>");
  EXPECT_EQ(tags(doc), (std::vector<std::string>{"script", "textarea"}));
  EXPECT_EQ(doc.elements()[1]->children().front()->text(), "<input name=q>");
}

TEST(HtmlTest, CommentsAndDoctypeArePreserved) {
  const std::string src = "<!DOCTYPE html><!-- <input> --><p>hi</p>";
  const Document doc = parse_document(src);
  EXPECT_EQ(tags(doc), (std::vector<std::string>{"p"}));
  EXPECT_EQ(serialize(doc.root()), src);
}

TEST(HtmlTest, ImplicitCloses) {
  const Document doc = parse_document("<ul><li>a<li>b</ul><p>one<p>two<div>x</div>");
  const auto els = doc.elements();
  ASSERT_EQ(tags(doc), (std::vector<std::string>{"ul", "li", "li", "p", "p", "div"}));
  EXPECT_EQ(els[2]->parent(), els[0]);  // second li is a sibling, not a child
  EXPECT_EQ(els[4]->parent(), &doc.root());
  EXPECT_EQ(els[5]->parent(), &doc.root());  // div closes the open p
}

TEST(HtmlTest, NestedFormStartTagIsIgnored) {
  const Document doc = parse_document("<form id=a><form id=b><input name=x></form>");
  EXPECT_EQ(tags(doc), (std::vector<std::string>{"form", "input"}));
  EXPECT_EQ(doc.elements()[0]->attr("id"), "a");
}

TEST(HtmlTest, UnmatchedEndTagsAreIgnored) {
  const Document doc = parse_document("<div></span><input name=a></div></div>");
  EXPECT_EQ(tags(doc), (std::vector<std::string>{"div", "input"}));
  EXPECT_EQ(doc.elements()[1]->parent(), doc.elements()[0]);
}

TEST(HtmlTest, VoidElementsHaveNoChildren) {
  const Document doc = parse_document("<input name=a><br><span>t</span>");
  EXPECT_TRUE(doc.elements()[0]->children().empty());
  EXPECT_EQ(doc.elements()[2]->parent(), &doc.root());
  EXPECT_TRUE(is_void_element("input"));
  EXPECT_FALSE(is_void_element("textarea"));
}

TEST(HtmlTest, SerializationEscapesAttributeValues) {
  const Document doc = parse_document(R"(<input value="a&amp;b &quot;c&quot;">)");
  EXPECT_EQ(serialize(*doc.elements().front()), R"(<input value="a&amp;b &quot;c&quot;">)");
  EXPECT_EQ(escape_attribute("<&\">"), "<&amp;&quot;>");
}

TEST(HtmlTest, EntityDecoding) {
  EXPECT_EQ(decode_entities("&lt;b&gt; &#65;&#x42; &nbsp;"), "<b> AB \xC2\xA0");
  EXPECT_EQ(decode_entities("&unknown; & &amp"), "&unknown; & &amp");
}

TEST(HtmlTest, DepthCountsDocumentNode) {
  const Document doc = parse_document("<div><span><input></span></div>");
  EXPECT_EQ(doc.elements()[0]->depth(), 1u);
  EXPECT_EQ(doc.elements()[2]->depth(), 3u);
}

// Every node is reachable from the root and parent links are consistent.
TEST(HtmlTest, PropertyTreeIsConsistent) {
  testing::Gen g(7);
  for (int round = 0; round < 300; ++round) {
    const std::string src = testing::random_form_document(g);
    const Document doc = parse_document(src);
    std::size_t visited = 0;
    for_each_element(doc.root(), [&](const Node& n) {
      ++visited;
      ASSERT_NE(n.parent(), nullptr);
      const auto& siblings = n.parent()->children();
      EXPECT_TRUE(std::any_of(siblings.begin(), siblings.end(), [&](const auto& c) { return c.get() == &n; }));
    });
    EXPECT_EQ(visited, doc.elements().size());
    // Reparsing the serialization is a fixed point.
    const std::string once = serialize(doc.root());
    EXPECT_EQ(serialize(parse_document(once).root()), once) << src;
  }
}

TEST(HtmlTest, ArbitraryBytesNeverFail) {
  testing::Gen g(11);
  const std::string alphabet = "<>/=\"' abc!-\xFF\n";
  for (int round = 0; round < 500; ++round) {
    std::string src;
    for (std::size_t n = g.range(0, 80); n > 0; --n) src.push_back(alphabet[g.range(0, alphabet.size() - 1)]);
    const Document doc = parse_document(src);
    EXPECT_EQ(doc.source(), src);
  }
}

}  // namespace
}  // namespace formforge::html
