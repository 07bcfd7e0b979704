/*
 * Copyright 2026 The lxq Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "lxq/corpus_xml.h"

#include <expat.h>

#include <charconv>
#include <exception>
#include <fstream>
#include <map>
#include <sstream>
#include <memory>
#include <vector>

#include "lxq/errors.h"
#include "lxq/text_util.h"

namespace lxq {
namespace {

using AttrMap = std::map<std::string, std::string, std::less<>>;

struct OpenSpan {
  std::size_t error_index;
  bool standoff;
};

class CorpusBuilder {
 public:
  explicit CorpusBuilder(XML_Parser parser) : parser_(parser) {}

  static void XMLCALL OnStart(void* data, const XML_Char* name,
                              const XML_Char** attrs) {
    auto* self = static_cast<CorpusBuilder*>(data);
    self->Guard([&] { self->Start(name, attrs); });
  }
  static void XMLCALL OnEnd(void* data, const XML_Char* name) {
    auto* self = static_cast<CorpusBuilder*>(data);
    self->Guard([&] { self->End(name); });
  }
  static void XMLCALL OnText(void* data, const XML_Char* s, int len) {
    auto* self = static_cast<CorpusBuilder*>(data);
    self->Guard([&] { self->Text(std::string_view(s, len)); });
  }

  std::exception_ptr failure() const { return failure_; }
  Corpus Take() { return std::move(corpus_); }
  bool saw_root() const { return saw_root_; }

 private:
  template <typename F>
  void Guard(F&& f) {
    if (failure_) return;
    try {
      f();
    } catch (...) {
      failure_ = std::current_exception();
      XML_StopParser(parser_, XML_FALSE);
    }
  }

  [[noreturn]] void Fail(const std::string& message) const {
    std::ostringstream msg;
    msg << "line " << XML_GetCurrentLineNumber(parser_) << ": " << message;
    std::string text_id = in_text_ ? corpus_.texts.back().id : std::string();
    int sentence = in_sentence_ ? sentence_index() : -1;
    if (!text_id.empty()) {
      msg << " (text " << text_id;
      if (sentence >= 0) msg << ", sentence " << sentence;
      msg << ")";
    }
    throw ValidationError(msg.str(), text_id, sentence);
  }

  int sentence_index() const {
    return static_cast<int>(corpus_.texts.back().sentences.size()) - 1;
  }

  AttrMap Collect(std::string_view element, const XML_Char** attrs,
                  std::initializer_list<std::string_view> required,
                  std::initializer_list<std::string_view> optional) const {
    AttrMap out;
    for (int i = 0; attrs[i] != nullptr; i += 2) {
      std::string_view key = attrs[i];
      bool known = false;
      for (auto k : required) known = known || k == key;
      for (auto k : optional) known = known || k == key;
      if (!known) {
        Fail("<" + std::string(element) + "> has unknown attribute '" +
             std::string(key) + "'");
      }
      out.emplace(attrs[i], attrs[i + 1]);
    }
    for (auto k : required) {
      if (out.find(k) == out.end()) {
        Fail("<" + std::string(element) + "> is missing attribute '" +
             std::string(k) + "'");
      }
    }
    return out;
  }

  static std::string Get(const AttrMap& attrs, std::string_view key) {
    const auto it = attrs.find(key);
    return it == attrs.end() ? std::string() : it->second;
  }

  int ParseIndex(const std::string& value, std::string_view attr) const {
    int out = 0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end || out < 0) {
      Fail("attribute '" + std::string(attr) + "' is not a token index: '" +
           value + "'");
    }
    return out;
  }

  void Start(std::string_view name, const XML_Char** attrs) {
    if (!saw_root_) {
      if (name != "corpus") Fail("root element must be <corpus>");
      saw_root_ = true;
      corpus_.name = Get(Collect(name, attrs, {"name"}, {}), "name");
      return;
    }
    if (!open_spans_.empty() && open_spans_.back().standoff) {
      Fail("standoff <err> with from/to must be empty");
    }
    if (name == "text") {
      if (in_text_) Fail("<text> cannot nest");
      const auto a = Collect(name, attrs, {"id", "l1", "level"}, {});
      LearnerText text;
      text.id = Get(a, "id");
      text.mothertongue = Get(a, "l1");
      text.level = Get(a, "level");
      corpus_.texts.push_back(std::move(text));
      in_text_ = true;
    } else if (name == "s") {
      if (!in_text_ || in_sentence_) Fail("<s> must be a direct child of <text>");
      Collect(name, attrs, {}, {});
      corpus_.texts.back().sentences.emplace_back();
      in_sentence_ = true;
    } else if (name == "tok") {
      if (!in_sentence_ || in_token_) Fail("<tok> must appear inside <s>");
      const auto a =
          Collect(name, attrs, {"surface", "lemma", "pos"}, {"traits"});
      Sentence& sentence = corpus_.texts.back().sentences.back();
      MorphoToken tok;
      tok.surface = Get(a, "surface");
      tok.lemma = Get(a, "lemma");
      tok.pos = Get(a, "pos");
      for (auto& t : SplitTrimmed(Get(a, "traits"), ';'))
        tok.traits.insert(std::move(t));
      tok.sentence_index = sentence_index();
      tok.token_index = static_cast<int>(sentence.tokens.size());
      sentence.tokens.push_back(std::move(tok));
      in_token_ = true;
    } else if (name == "err") {
      if (!in_sentence_ || in_token_) Fail("<err> must appear inside <s>");
      const auto a = Collect(name, attrs, {"cat"}, {"corr", "from", "to"});
      Sentence& sentence = corpus_.texts.back().sentences.back();
      ErrorSpan span;
      span.category = Get(a, "cat");
      span.corrected_form = Get(a, "corr");
      const bool has_from = a.count("from") > 0;
      const bool has_to = a.count("to") > 0;
      if (has_from != has_to) Fail("<err> needs both 'from' and 'to' or neither");
      if (has_from) {
        span.first_token = ParseIndex(Get(a, "from"), "from");
        span.last_token = ParseIndex(Get(a, "to"), "to");
      } else {
        span.first_token = static_cast<int>(sentence.tokens.size());
        span.last_token = span.first_token - 1;
      }
      sentence.errors.push_back(std::move(span));
      open_spans_.push_back({sentence.errors.size() - 1, has_from});
    } else {
      Fail("unknown element <" + std::string(name) + ">");
    }
  }

  void End(std::string_view name) {
    if (name == "text") {
      in_text_ = false;
    } else if (name == "s") {
      in_sentence_ = false;
    } else if (name == "tok") {
      in_token_ = false;
    } else if (name == "err") {
      const OpenSpan open = open_spans_.back();
      open_spans_.pop_back();
      if (open.standoff) return;
      Sentence& sentence = corpus_.texts.back().sentences.back();
      ErrorSpan& span = sentence.errors[open.error_index];
      span.last_token = static_cast<int>(sentence.tokens.size()) - 1;
      if (span.last_token < span.first_token) {
        Fail("<err cat=\"" + span.category + "\"> wraps no tokens");
      }
    }
  }

  void Text(std::string_view s) {
    if (!Trim(s).empty()) Fail("unexpected character data '" + std::string(Trim(s)) + "'");
  }

  XML_Parser parser_;
  Corpus corpus_;
  std::exception_ptr failure_;
  std::vector<OpenSpan> open_spans_;
  bool saw_root_ = false;
  bool in_text_ = false;
  bool in_sentence_ = false;
  bool in_token_ = false;
};

struct ParserDeleter {
  void operator()(XML_ParserStruct* p) const { XML_ParserFree(p); }
};

void EscapeAttr(std::string& out, std::string_view value) {
  for (char c : value) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      case '\t': out += "&#9;"; break;
      default: out.push_back(c);
    }
  }
}

void Attr(std::string& out, std::string_view key, std::string_view value) {
  out += ' ';
  out += key;
  out += "=\"";
  EscapeAttr(out, value);
  out += '"';
}

}  // namespace

Corpus ParseCorpusUnchecked(std::string_view xml) {
  std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(
      XML_ParserCreate("UTF-8"));
  if (!parser) throw std::bad_alloc();
  CorpusBuilder builder(parser.get());
  XML_SetUserData(parser.get(), &builder);
  XML_SetElementHandler(parser.get(), &CorpusBuilder::OnStart,
                        &CorpusBuilder::OnEnd);
  XML_SetCharacterDataHandler(parser.get(), &CorpusBuilder::OnText);

  constexpr std::size_t kChunk = 1 << 20;
  std::size_t offset = 0;
  do {
    const std::size_t n = std::min(kChunk, xml.size() - offset);
    const bool last = offset + n == xml.size();
    const auto status = XML_Parse(parser.get(), xml.data() + offset,
                                  static_cast<int>(n), last ? XML_TRUE : XML_FALSE);
    if (builder.failure()) std::rethrow_exception(builder.failure());
    if (status != XML_STATUS_OK) {
      const int line = static_cast<int>(XML_GetCurrentLineNumber(parser.get()));
      std::ostringstream msg;
      msg << "malformed XML at line " << line << ": "
          << XML_ErrorString(XML_GetErrorCode(parser.get()));
      throw ParseError(msg.str(), line);
    }
    offset += n;
  } while (offset < xml.size());
  if (!builder.saw_root()) throw ParseError("malformed XML: no root element", 1);

  Corpus corpus = builder.Take();
  for (auto& text : corpus.texts)
    for (auto& sentence : text.sentences) SortSpans(sentence.errors);
  corpus.catalog = ComputeCatalog(corpus);
  return corpus;
}

Corpus ParseCorpus(std::string_view xml) {
  Corpus corpus = ParseCorpusUnchecked(xml);
  const auto findings = ValidateCorpus(corpus);
  for (const auto& f : findings) {
    if (f.severity == Severity::kError)
      throw ValidationError(FormatFinding(f), f.text_id, f.sentence);
  }
  return corpus;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw std::runtime_error("cannot read " + path);
  return buf.str();
}

Corpus ParseCorpusFile(const std::string& path) { return ParseCorpus(ReadFile(path)); }

std::string SerializeCorpus(const Corpus& corpus) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<corpus";
  Attr(out, "name", corpus.name);
  out += ">\n";
  for (const auto& text : corpus.texts) {
    out += "  <text";
    Attr(out, "id", text.id);
    Attr(out, "l1", text.mothertongue);
    Attr(out, "level", text.level);
    out += ">\n";
    for (const auto& sentence : text.sentences) {
      out += "    <s>\n";
      std::vector<const ErrorSpan*> open;
      std::size_t next_span = 0;
      auto indent = [&] { out.append(6 + 2 * open.size(), ' '); };
      for (int t = 0; t < static_cast<int>(sentence.tokens.size()); ++t) {
        while (!open.empty() && open.back()->last_token < t) {
          open.pop_back();
          indent();
          out += "</err>\n";
        }
        while (next_span < sentence.errors.size() &&
               sentence.errors[next_span].first_token == t) {
          const ErrorSpan& span = sentence.errors[next_span++];
          indent();
          out += "<err";
          Attr(out, "cat", span.category);
          if (!span.corrected_form.empty()) Attr(out, "corr", span.corrected_form);
          out += ">\n";
          open.push_back(&span);
        }
        const MorphoToken& tok = sentence.tokens[t];
        indent();
        out += "<tok";
        Attr(out, "surface", tok.surface);
        Attr(out, "lemma", tok.lemma);
        Attr(out, "pos", tok.pos);
        if (!tok.traits.empty()) {
          std::string traits;
          for (const auto& tr : tok.traits) {
            if (!traits.empty()) traits += ';';
            traits += tr;
          }
          Attr(out, "traits", traits);
        }
        out += "/>\n";
      }
      while (!open.empty()) {
        open.pop_back();
        indent();
        out += "</err>\n";
      }
      out += "    </s>\n";
    }
    out += "  </text>\n";
  }
  out += "</corpus>\n";
  return out;
}

}  // namespace lxq
