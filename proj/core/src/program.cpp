#include "fwh/program.hpp"

#include <fstream>
#include <sstream>

namespace fwh {
namespace {

const char* const kPreludeFile = "<prelude>";

Diagnostic diagnostic_from(const Error& e, const std::string& file, const std::string& decl, Span fallback) {
  return Diagnostic{file, e.span().known() ? e.span() : fallback, e.judgement(), e.code(), decl, e.failure()};
}

}  // namespace

std::string Diagnostic::rule() const {
  auto leaves = leaf_rules(failure);
  return leaves.empty() ? failure.rule : leaves.front();
}

std::string Diagnostic::message() const {
  const Failure* f = &failure;
  while (!f->causes.empty()) f = &f->causes.front();
  if (f == &failure) return failure.message;
  return failure.message + "; " + f->rule + ": " + f->message;
}

std::string Diagnostic::render() const {
  std::ostringstream os;
  os << file;
  if (span.known()) os << ":" << span.line << ":" << span.column;
  os << ": error[" << to_string(judgement) << "/" << code << "]";
  if (!decl.empty()) os << " in " << decl;
  os << ": " << failure.message << "\n";
  for (const auto& line : trail(failure)) os << "  | " << line << "\n";
  return os.str();
}

const CheckedDef* Program::find(std::string_view name) const {
  for (auto it = defs_.rbegin(); it != defs_.rend(); ++it)
    if (it->name == name) return &*it;
  return nullptr;
}

TypingContext Program::context() const {
  TypingContext g;
  for (const auto& d : defs_)
    if (d.type) g = g.with_term(d.name, *d.type);
  return g;
}

TypingContext Program::assumptions() const {
  TypingContext g;
  for (const auto& d : defs_)
    if (d.type && !d.elaborated) g = g.with_term(d.name, *d.type);
  return g;
}

Term Program::inline_erased(const Term& t) const {
  Term out = erase(t);
  for (auto it = defs_.rbegin(); it != defs_.rend(); ++it)
    if (it->elaborated && term_var_free(it->name, out)) out = subst_term(erase(*it->elaborated), it->name, out);
  return out;
}

Term Program::inline_typed(const Term& t) const {
  Term out = t;
  for (auto it = defs_.rbegin(); it != defs_.rend(); ++it)
    if (it->elaborated && it->type && term_var_free(it->name, out))
      out = subst_term(Term::anno(*it->elaborated, *it->type, it->span), it->name, out);
  return out;
}

void Program::add(const Decl& decl, const std::string& file, bool from_prelude, const LoadOptions& options) {
  if (const auto* td = std::get_if<TypeDecl>(&decl)) {
    try {
      Elaborated e = elaborate(KindContext{}, td->body, td->kind, &abbrevs_);
      abbrevs_[td->name] = TypeAbbrev{e.con, td->kind.value_or(e.kind)};
    } catch (const Error& e) {
      diagnostics_.push_back(diagnostic_from(e, file, td->name, td->span));
    }
    return;
  }
  const auto& dd = std::get<DefDecl>(decl);
  CheckedDef def{dd.name, dd.span, from_prelude, !dd.body.has_value(), false, std::nullopt, std::nullopt, std::nullopt};
  TypeChecker tc(options.check, &abbrevs_);
  TypingContext gamma = context();
  try {
    if (dd.type) def.type = tc.elaborate_type(gamma, *dd.type);
    if (dd.body) {
      Typed typed = def.type ? tc.check(gamma, *dd.body, *def.type) : tc.infer(gamma, *dd.body);
      if (!def.type) def.type = typed.type;
      def.elaborated = typed.elaborated;
      def.derivation = typed.derivation;
    }
    def.ok = true;
  } catch (const Error& e) {
    diagnostics_.push_back(diagnostic_from(e, file, dd.name, dd.span));
  }
  defs_.push_back(std::move(def));
}

Program check_source(const SourceFile& src, const std::string& file, const LoadOptions& options) {
  Program p;
  if (options.prelude) {
    SourceFile prelude = parse_source(prelude_text());
    for (const auto& d : prelude.decls) p.add(d, kPreludeFile, true, options);
  }
  for (const auto& d : src.decls) p.add(d, file, false, options);
  return p;
}

Program check_text(std::string_view text, const std::string& file, const LoadOptions& options) {
  try {
    return check_source(parse_source(text), file, options);
  } catch (const Error& e) {
    Program p;
    p.diagnostics_.push_back(diagnostic_from(e, file, "", e.span()));
    return p;
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace fwh
