#include "wnu/term_store.hpp"

#include <cctype>
#include <mutex>

namespace wnu {

bool is_valid_identifier(std::string_view name) {
  if (name.empty()) return false;
  if (std::isdigit(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

TermStore::TermStore(unsigned arity) : arity_(arity) {
  if (arity < 3) {
    throw ArityError(
        "arity must be >= 3: the binary case reduces to commutativity "
        "(w(x,y) = w(y,x)) and is not handled by this engine");
  }
}

TermId TermStore::variable(std::string_view name) {
  if (!is_valid_identifier(name)) {
    throw std::invalid_argument("invalid identifier: '" + std::string(name) +
                                "'");
  }
  if (name == "w") {
    throw std::invalid_argument(
        "'w' is reserved for the operation symbol and cannot name a variable");
  }
  {
    std::shared_lock lk(mu_);
    auto it = var_ids_.find(std::string(name));
    if (it != var_ids_.end()) return it->second;
  }
  std::unique_lock lk(mu_);
  auto [it, inserted] =
      var_ids_.try_emplace(std::string(name), TermId(nodes_.size()));
  if (inserted) {
    Node n;
    n.name = name;
    n.leaf = true;
    n.normal = true;
    nodes_.push_back(std::move(n));
  }
  return it->second;
}

TermId TermStore::app(std::span<const TermId> children) {
  if (children.size() != arity_) {
    throw ArityError("expected " + std::to_string(arity_) +
                     " children, got " + std::to_string(children.size()));
  }
  std::vector<TermId> kids(children.begin(), children.end());
  {
    std::shared_lock lk(mu_);
    for (TermId c : kids) {
      if (c >= nodes_.size()) throw std::invalid_argument("unknown term id");
    }
    auto it = app_ids_.find(kids);
    if (it != app_ids_.end()) return it->second;
  }
  std::unique_lock lk(mu_);
  auto it = app_ids_.find(kids);
  if (it != app_ids_.end()) return it->second;

  Node n;
  n.w_count = 1;
  bool kids_normal = true;
  unsigned differs = 0;
  for (TermId c : kids) {
    const Node &cn = nodes_[c];
    n.w_count += cn.w_count;
    kids_normal = kids_normal && cn.normal;
  }
  for (std::size_t i = 1; i < kids.size(); ++i) {
    if (kids[i] != kids[0]) ++differs;
  }
  n.normal = kids_normal && differs >= 2;
  n.kids = kids;
  TermId id = TermId(nodes_.size());
  nodes_.push_back(std::move(n));
  app_ids_.emplace(std::move(kids), id);
  return id;
}

const TermStore::Node &TermStore::node(TermId t) const {
  std::shared_lock lk(mu_);
  if (t >= nodes_.size()) throw std::invalid_argument("unknown term id");
  return nodes_[t];  // deque elements are never moved or mutated
}

bool TermStore::is_leaf(TermId t) const { return node(t).leaf; }

std::string TermStore::var_name(TermId t) const {
  const Node &n = node(t);
  if (!n.leaf) throw std::invalid_argument("not a variable leaf");
  return n.name;
}

std::span<const TermId> TermStore::children(TermId t) const {
  const Node &n = node(t);
  if (n.leaf) return {};
  return n.kids;
}

std::uint64_t TermStore::w_count(TermId t) const { return node(t).w_count; }

bool TermStore::is_normal(TermId t) const { return node(t).normal; }

void TermStore::render_into(TermId t, std::string &out) const {
  const Node &n = node(t);
  if (n.leaf) {
    out += n.name;
    return;
  }
  out += "w(";
  for (std::size_t i = 0; i < n.kids.size(); ++i) {
    if (i) out += ',';
    render_into(n.kids[i], out);
  }
  out += ')';
}

std::string TermStore::render(TermId t) const {
  std::string out;
  render_into(t, out);
  return out;
}

std::size_t TermStore::size() const {
  std::shared_lock lk(mu_);
  return nodes_.size();
}

namespace {

class TermParser {
 public:
  TermParser(std::string_view text, TermStore &store)
      : text_(text), store_(store) {}

  TermId run() {
    TermId t = parse_term();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input after term");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string &msg) const {
    throw ParseError(msg + " at position " + std::to_string(pos_), pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  std::string_view ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      ++pos_;
    }
    if (pos_ == start) fail("expected identifier");
    std::string_view name = text_.substr(start, pos_ - start);
    if (std::isdigit(static_cast<unsigned char>(name[0]))) {
      pos_ = start;
      fail("identifier cannot start with a digit");
    }
    return name;
  }

  TermId parse_term() {
    std::string_view name = ident();
    if (name != "w") return store_.variable(name);
    expect('(');
    std::vector<TermId> kids;
    kids.push_back(parse_term());
    while (true) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        kids.push_back(parse_term());
      } else {
        break;
      }
    }
    expect(')');
    if (kids.size() != store_.arity()) {
      throw ArityError("w takes " + std::to_string(store_.arity()) +
                       " arguments, got " + std::to_string(kids.size()) +
                       " at position " + std::to_string(pos_));
    }
    return store_.app(kids);
  }

  std::string_view text_;
  TermStore &store_;
  std::size_t pos_ = 0;
};

}  // namespace

TermId TermStore::parse(std::string_view text) {
  return TermParser(text, *this).run();
}

}  // namespace wnu
