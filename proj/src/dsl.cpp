#include "graphck/dsl.hpp"

#include <cctype>
#include <vector>

#include "graphck/errors.hpp"

namespace graphck {

bool is_identifier_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == ',' ||
         c == '(' || c == ')';
}

namespace {

enum class Tok { Ident, Colon, Arrow };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;
};

std::vector<Token> lex_line(std::string_view line, std::size_t lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else if (c == ':') {
      out.push_back({Tok::Colon, ":", i + 1});
      ++i;
    } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", i + 1});
      i += 2;
    } else if (is_identifier_char(c)) {
      std::size_t start = i;
      while (i < line.size() && is_identifier_char(line[i])) ++i;
      out.push_back({Tok::Ident, std::string(line.substr(start, i - start)), start + 1});
    } else {
      throw ParseError(lineno, i + 1,
                       "unexpected character '" + std::string(1, c) + "' at line " +
                           std::to_string(lineno) + ", column " + std::to_string(i + 1));
    }
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, std::size_t col, const std::string& what) {
  throw ParseError(line, col, what + " at line " + std::to_string(line));
}

}  // namespace

DirectedGraph parse_graph(std::string_view text) {
  DirectedGraph g;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;

    auto toks = lex_line(line, lineno);
    if (toks.empty()) continue;
    const Token& head = toks[0];
    const std::size_t end_col = line.size() + 1;
    if (head.kind != Tok::Ident) fail(lineno, head.column, "expected 'vertex' or 'edge'");

    if (head.text == "vertex") {
      if (toks.size() < 2 || toks[1].kind != Tok::Ident)
        fail(lineno, toks.size() < 2 ? end_col : toks[1].column, "expected vertex id");
      if (toks.size() > 2) fail(lineno, toks[2].column, "trailing input after vertex id");
      if (g.find_vertex(toks[1].text))
        fail(lineno, toks[1].column, "duplicate vertex " + toks[1].text);
      g.add_vertex(toks[1].text);
    } else if (head.text == "edge") {
      static const Tok shape[] = {Tok::Ident, Tok::Ident, Tok::Colon, Tok::Ident, Tok::Arrow,
                                  Tok::Ident};
      static const char* names[] = {"", "edge id", "':'", "source vertex", "'->'",
                                    "range vertex"};
      for (std::size_t k = 1; k < 6; ++k) {
        if (toks.size() <= k) fail(lineno, end_col, std::string("expected ") + names[k]);
        if (toks[k].kind != shape[k])
          fail(lineno, toks[k].column, std::string("expected ") + names[k]);
      }
      if (toks.size() > 6) fail(lineno, toks[6].column, "trailing input after edge");
      if (g.find_edge(toks[1].text)) fail(lineno, toks[1].column, "duplicate edge " + toks[1].text);
      auto src = g.find_vertex(toks[3].text);
      if (!src) fail(lineno, toks[3].column, "unknown vertex " + toks[3].text);
      auto dst = g.find_vertex(toks[5].text);
      if (!dst) fail(lineno, toks[5].column, "unknown vertex " + toks[5].text);
      g.add_edge(toks[1].text, *src, *dst);
    } else {
      fail(lineno, head.column, "unknown declaration '" + head.text + "'");
    }
  }
  return g;
}

std::string emit_graph(const DirectedGraph& g) {
  std::string out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) out += "vertex " + g.vertex_id(v) + "\n";
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    out += "edge " + ed.id + " : " + g.vertex_id(ed.source) + " -> " + g.vertex_id(ed.range) + "\n";
  }
  return out;
}

}  // namespace graphck
