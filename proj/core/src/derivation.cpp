#include "fwh/derivation.hpp"

namespace fwh {

std::string_view to_string(Judgement j) noexcept {
  switch (j) {
    case Judgement::syntax: return "syntax";
    case Judgement::kinding: return "kinding";
    case Judgement::subtyping: return "subtyping";
    case Judgement::semicont: return "semicont";
    case Judgement::admissibility: return "admissibility";
    case Judgement::typing: return "typing";
    case Judgement::evaluation: return "evaluation";
    case Judgement::usage: return "usage";
  }
  return "?";
}

Error::Error(Judgement judgement, std::string code, Failure failure, Span span)
    : std::runtime_error(code + ": " + failure.message),
      judgement_(judgement),
      code_(std::move(code)),
      failure_(std::move(failure)),
      span_(span) {}

Error Error::located(Span span) const {
  Error copy = *this;
  if (!copy.span_.known()) copy.span_ = span;
  return copy;
}

namespace {
void render_into(const Derivation& d, int depth, std::string& out) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += "[" + d.rule + "] " + d.conclusion + "\n";
  for (const auto& p : d.premises) render_into(p, depth + 1, out);
}

void render_into(const Failure& f, int depth, std::string& out) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += f.rule + ": " + f.message + "\n";
  for (const auto& c : f.causes) render_into(c, depth + 1, out);
}

void trail_into(const Failure& f, std::vector<std::string>& out) {
  out.push_back(f.rule + ": " + f.message);
  for (const auto& c : f.causes) trail_into(c, out);
}

void leaves_into(const Failure& f, std::vector<std::string>& out) {
  if (f.causes.empty()) {
    out.push_back(f.rule);
    return;
  }
  for (const auto& c : f.causes) leaves_into(c, out);
}
}  // namespace

std::string render(const Derivation& d) {
  std::string out;
  render_into(d, 0, out);
  return out;
}

std::string render(const Failure& f) {
  std::string out;
  render_into(f, 0, out);
  return out;
}

std::vector<std::string> trail(const Failure& f) {
  std::vector<std::string> out;
  trail_into(f, out);
  return out;
}

std::vector<std::string> leaf_rules(const Failure& f) {
  std::vector<std::string> out;
  leaves_into(f, out);
  return out;
}

std::size_t size(const Derivation& d) {
  std::size_t n = 1;
  for (const auto& p : d.premises) n += size(p);
  return n;
}

}  // namespace fwh
