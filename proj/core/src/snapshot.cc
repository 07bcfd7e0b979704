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

#include <algorithm>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "lxq/errors.h"
#include "lxq/index.h"

namespace lxq {
namespace {

// Little-endian fixed-width encoding, independent of host byte order.
class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}
  void U32(std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out_.write(b, 4);
  }
  void I32(std::int32_t v) { U32(static_cast<std::uint32_t>(v)); }
  void Str(std::string_view s) {
    U32(static_cast<std::uint32_t>(s.size()));
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}
  std::uint32_t U32() {
    unsigned char b[4];
    in_.read(reinterpret_cast<char*>(b), 4);
    if (!in_) throw SnapshotError("snapshot truncated");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
  }
  std::int32_t I32() { return static_cast<std::int32_t>(U32()); }
  std::string Str() {
    const auto n = U32();
    if (n > (1u << 28)) throw SnapshotError("snapshot string length out of range");
    std::string s(n, '\0');
    in_.read(s.data(), n);
    if (!in_) throw SnapshotError("snapshot truncated");
    return s;
  }
  // Element counts are bounded to keep a corrupt header from allocating
  // unbounded memory.
  std::uint32_t Count() {
    const auto n = U32();
    if (n > (1u << 28)) throw SnapshotError("snapshot count out of range");
    return n;
  }

 private:
  std::istream& in_;
};

constexpr char kTrailer[4] = {'E', 'N', 'D', '!'};

}  // namespace

void CorpusIndex::WriteSnapshot(std::ostream& out) const {
  out.write(kSnapshotMagic, 4);
  Writer w(out);
  w.U32(kSnapshotVersion);

  const Corpus& c = *corpus_;
  w.Str(c.name);
  w.U32(static_cast<std::uint32_t>(c.texts.size()));
  for (const auto& text : c.texts) {
    w.Str(text.id);
    w.Str(text.mothertongue);
    w.Str(text.level);
    w.U32(static_cast<std::uint32_t>(text.sentences.size()));
    for (const auto& s : text.sentences) {
      w.U32(static_cast<std::uint32_t>(s.tokens.size()));
      for (const auto& tok : s.tokens) {
        w.Str(tok.surface);
        w.Str(tok.lemma);
        w.Str(tok.pos);
        w.U32(static_cast<std::uint32_t>(tok.traits.size()));
        for (const auto& tr : tok.traits) w.Str(tr);
      }
      w.U32(static_cast<std::uint32_t>(s.errors.size()));
      for (const auto& e : s.errors) {
        w.Str(e.category);
        w.I32(e.first_token);
        w.I32(e.last_token);
        w.Str(e.corrected_form);
      }
    }
  }

  for (const auto& map : postings_) {
    std::vector<const PostingMap::value_type*> entries;
    entries.reserve(map.size());
    for (const auto& entry : map) entries.push_back(&entry);
    std::sort(entries.begin(), entries.end(),
              [](const auto* a, const auto* b) { return a->first < b->first; });
    w.U32(static_cast<std::uint32_t>(entries.size()));
    for (const auto* entry : entries) {
      w.Str(entry->first);
      w.U32(static_cast<std::uint32_t>(entry->second.size()));
      for (const Posting& p : entry->second) {
        w.U32(p.text);
        w.U32(p.sentence);
        w.U32(p.token);
      }
    }
  }
  out.write(kTrailer, 4);
  if (!out) throw SnapshotError("failed to write snapshot");
}

CorpusIndex CorpusIndex::ReadSnapshot(std::istream& in) {
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kSnapshotMagic, 4) != 0)
    throw SnapshotError("not an index snapshot (bad magic)");
  Reader r(in);
  const auto version = r.U32();
  if (version != kSnapshotVersion) {
    throw SnapshotError("unsupported snapshot version " + std::to_string(version) +
                        " (expected " + std::to_string(kSnapshotVersion) + ")");
  }

  auto corpus = std::make_shared<Corpus>();
  corpus->name = r.Str();
  corpus->texts.resize(r.Count());
  for (auto& text : corpus->texts) {
    text.id = r.Str();
    text.mothertongue = r.Str();
    text.level = r.Str();
    text.sentences.resize(r.Count());
    for (std::size_t si = 0; si < text.sentences.size(); ++si) {
      Sentence& s = text.sentences[si];
      s.tokens.resize(r.Count());
      for (std::size_t ti = 0; ti < s.tokens.size(); ++ti) {
        MorphoToken& tok = s.tokens[ti];
        tok.surface = r.Str();
        tok.lemma = r.Str();
        tok.pos = r.Str();
        const auto nt = r.Count();
        for (std::uint32_t k = 0; k < nt; ++k) tok.traits.insert(r.Str());
        tok.sentence_index = static_cast<int>(si);
        tok.token_index = static_cast<int>(ti);
      }
      s.errors.resize(r.Count());
      for (auto& e : s.errors) {
        e.category = r.Str();
        e.first_token = r.I32();
        e.last_token = r.I32();
        e.corrected_form = r.Str();
      }
    }
  }
  corpus->catalog = ComputeCatalog(*corpus);
  if (HasErrors(ValidateCorpus(*corpus)))
    throw SnapshotError("snapshot holds an invalid corpus");

  CorpusIndex index;
  index.corpus_ = std::move(corpus);
  for (auto& map : index.postings_) {
    const auto nkeys = r.Count();
    for (std::uint32_t k = 0; k < nkeys; ++k) {
      auto key = r.Str();
      std::vector<Posting> list(r.Count());
      for (auto& p : list) {
        p.text = r.U32();
        p.sentence = r.U32();
        p.token = r.U32();
      }
      map.emplace(std::move(key), std::move(list));
    }
  }
  char trailer[4] = {};
  in.read(trailer, 4);
  if (!in || std::memcmp(trailer, kTrailer, 4) != 0)
    throw SnapshotError("snapshot trailer missing");
  index.Finish();
  return index;
}

bool LooksLikeSnapshot(std::string_view bytes) {
  return bytes.size() >= 4 && std::memcmp(bytes.data(), kSnapshotMagic, 4) == 0;
}

CorpusIndex LoadSnapshotFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError("cannot open " + path);
  return CorpusIndex::ReadSnapshot(in);
}

void SaveSnapshotFile(const CorpusIndex& index, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SnapshotError("cannot write " + path);
  index.WriteSnapshot(out);
}

}  // namespace lxq
