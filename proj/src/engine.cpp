#include "ocp/engine.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ocp/dsl.hpp"

namespace ocp {

Engine::Engine(EngineConfig config) : config_(std::move(config)) {
  for (const auto& [role, kinds] : config_.matrix_overrides)
    for (const auto& [kind, rights] : kinds)
      matrix_.override_row(role_from_name(role), access_kind_from_name(kind),
                           Rights::parse(rights));
  for (const auto& [role, repo_name] : config_.special_repos)
    matrix_.set_special_repo(role_from_name(role), repo_name);
  ensure_repo("main", 0);
}

Repository& Engine::ensure_repo(const std::string& name, uint64_t pos) {
  auto it = repos_.find(name);
  if (it != repos_.end()) return *it->second;
  auto created = std::make_unique<Repository>(name, config_.max_level);
  auto critical = config_.content_critical.find(name);
  if (critical != config_.content_critical.end())
    for (const auto& concept_name : critical->second)
      created->mark_content_critical(concept_name, pos);
  return *repos_.emplace(name, std::move(created)).first->second;
}

Repository& Engine::repo(const std::string& name) {
  auto it = repos_.find(name);
  if (it == repos_.end()) fail(Errc::unknown_object, "repository '" + name + "'");
  return *it->second;
}

const Repository& Engine::repo(const std::string& name) const {
  auto it = repos_.find(name);
  if (it == repos_.end()) fail(Errc::unknown_object, "repository '" + name + "'");
  return *it->second;
}

std::vector<std::string> Engine::repo_names() const {
  std::vector<std::string> out;
  for (const auto& [name, r] : repos_) { (void)r; out.push_back(name); }
  return out;
}

void Engine::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::load_error, "cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  load_text(buf.str(), path);
}

void Engine::load_text(const std::string& source, const std::string& filename) {
  for (const auto& stmt : parse_model(source, filename)) execute(stmt);
}

uint64_t Engine::execute(const Statement& stmt) { return execute_in(stmt, current_repo_); }

uint64_t Engine::execute_text(const std::string& text) {
  return execute(parse_statement(text));
}

uint64_t Engine::execute_in(const Statement& stmt, const std::string& repo_ctx) {
  uint64_t pos = log_.size() + 1;
  Effects effects = apply(stmt, repo_ctx, pos);
  append_log(pos, repo_ctx, to_dsl(stmt));

  ChangeEvent event;
  if (effects.event) {
    event = *effects.event;
  } else {
    event.repository = repo_ctx;
  }
  event.position = pos;
  on_change(event);

  if (effects.new_view) rerender(*effects.new_view, "register", pos);
  if (effects.is_tick) {
    ++ticks_;
    for (const auto& [name, v] : views_) {
      if (v.policy.mode == UpdateMode::periodic && ticks_ % static_cast<uint64_t>(v.policy.interval) == 0)
        rerender(name, "periodic", pos);
    }
  }
  if (effects.refresh_view) rerender(*effects.refresh_view, "manual", pos);
  return pos;
}

void Engine::append_log(uint64_t pos, const std::string& repo_ctx, std::string text) {
  log_.push_back({pos, repo_ctx, std::move(text)});
  if (log_file_) {
    const LogRecord& r = log_.back();
    (*log_file_) << r.position << '\t' << r.repo << '\t' << r.text << '\n';
  }
}

Value Engine::ground_term(Repository& r, const TermExpr& t) const {
  switch (t.kind) {
    case TermExpr::Kind::literal:
      return t.literal;
    case TermExpr::Kind::name: {
      // bare identifier: a declared constant, else an enum symbol
      auto c = r.language().constants.find(t.name);
      if (c != r.language().constants.end()) return c->second;
      return Value(t.name);
    }
    case TermExpr::Kind::symbolic_ref:
      return Value(ObjectRef{0, r.require_oid(t.ref_concept, t.ref_identity)});
    default:
      fail(Errc::unresolved_term, "term '" + to_text(t) + "' is not ground");
  }
}

std::map<std::string, Value> Engine::ground_assigns(Repository& r,
                                                    const AssignList& assigns) const {
  std::map<std::string, Value> out;
  for (const auto& [attr, term] : assigns) {
    if (out.count(attr)) fail(Errc::bad_spec, "attribute '" + attr + "' assigned twice");
    out.emplace(attr, ground_term(r, term));
  }
  return out;
}

namespace {

// Constants reaching the meta object's own level or above would make the
// defining formula self-referential.
void check_level_references(const Formula& f, const Repository& repo, int32_t source_level) {
  for (const auto& t : f.terms) {
    if (t.kind != TermExpr::Kind::constant) continue;
    auto it = repo.language().constants.find(t.name);
    if (it == repo.language().constants.end()) continue;
    const auto* ref = std::get_if<ObjectRef>(&it->second);
    if (ref && ref->level > source_level)
      fail(Errc::bad_spec, "constant '" + t.name + "' references level " +
                               std::to_string(ref->level) +
                               "; a defining formula may only reach below its own level");
  }
  for (const auto& c : f.children) check_level_references(c, repo, source_level);
}

}  // namespace

Engine::Effects Engine::apply_one(const RepositoryStmt& s, Repository&, uint64_t pos) {
  ensure_repo(s.name, pos);
  current_repo_ = s.name;
  return {};
}

Engine::Effects Engine::apply_one(const ContentCriticalStmt& s, Repository& ctx, uint64_t pos) {
  ctx.mark_content_critical(s.concept_name, pos);
  return {};
}

Engine::Effects Engine::apply_one(const EnumStmt& s, Repository& ctx, uint64_t pos) {
  ctx.define_enum(s.name, s.values, pos);
  return {};
}

Engine::Effects Engine::apply_one(const ConceptStmt& s, Repository& ctx, uint64_t pos) {
  ConceptDef def = s.def;
  for (auto& a : def.attributes) {
    if (a.range.kind != TypeTag::Kind::concept_ref) continue;
    if (const auto* values = ctx.find_enum(a.range.name)) {
      a.range = TypeTag::enumeration(a.range.name, *values);
    } else if (!ctx.find_concept(a.range.name) && a.range.name != def.name) {
      fail(Errc::bad_spec, "attribute '" + a.name + "' has unknown type '" + a.range.name + "'");
    }
  }
  ctx.define_concept(std::move(def), pos);
  return {};
}

Engine::Effects Engine::apply_one(const IndividualStmt& s, Repository& ctx, uint64_t pos) {
  auto identity = ground_assigns(ctx, s.assigns);
  const Individual& ind = ctx.assert_individual(s.concept_name, identity, pos);
  Effects e;
  ChangeEvent ev;
  ev.repository = ctx.name();
  ev.operation = "assert-individual";
  ev.ref = ObjectRef{0, ind.oid};
  ev.concept_name = s.concept_name;
  ev.content_critical = ctx.is_content_critical(s.concept_name);
  e.event = ev;
  return e;
}

Engine::Effects Engine::apply_one(const StateStmt& s, Repository& ctx, uint64_t pos) {
  uint64_t oid = ctx.require_oid(s.concept_name, s.identity);
  auto updates = ground_assigns(ctx, s.updates);
  ctx.transition_state(oid, s.cause, updates, pos);
  Effects e;
  ChangeEvent ev;
  ev.repository = ctx.name();
  ev.operation = "transition-state";
  ev.ref = ObjectRef{0, oid};
  ev.concept_name = s.concept_name;
  ev.content_critical = ctx.is_content_critical(s.concept_name);
  e.event = ev;
  return e;
}

Engine::Effects Engine::apply_one(const MetaStmt& s, Repository& ctx, uint64_t pos) {
  if (s.level < 1) fail(Errc::bad_spec, "meta level must be >= 1");
  int32_t source = s.level - 1;
  if (s.over_level && *s.over_level != source)
    fail(Errc::bad_spec, "a level-" + std::to_string(s.level) +
                             " meta object must range over level " + std::to_string(source));
  Formula defining = s.where;
  ResolveScope scope;
  scope.repo = &ctx;
  scope.self_var = "x";
  if (s.over_concept) scope.self_concept = &ctx.require_concept(*s.over_concept);
  else if (source >= 1) scope.self_is_meta = true;
  resolve_formula(defining, scope);
  check_level_references(defining, ctx, source);
  std::map<std::string, std::string> descriptors(s.descriptors.begin(), s.descriptors.end());
  MetaObject& meta =
      ctx.lift(s.name, std::move(defining), source, s.over_concept, std::move(descriptors), pos);
  meta.extension = compute_extension(ctx, meta);
  meta.cached_at = pos;
  return {};
}

Engine::Effects Engine::apply_one(const PredicateStmt& s, Repository& ctx, uint64_t pos) {
  ctx.declare_predicate(s.name, pos);
  return {};
}

Engine::Effects Engine::apply_one(const ConstantStmt& s, Repository& ctx, uint64_t pos) {
  ctx.declare_constant(s.name, ground_term(ctx, s.value), pos);
  return {};
}

Engine::Effects Engine::apply_one(const FactStmt& s, Repository& ctx, uint64_t pos) {
  Value subject = ground_term(ctx, s.subject);
  Value object = ground_term(ctx, s.object);
  bool changed = s.retract ? ctx.retract_fact(s.predicate, subject, object, pos)
                           : ctx.assert_fact(s.predicate, subject, object, pos);
  Effects e;
  if (!changed) return e;  // idempotent assert / absent retract: no change event
  ChangeEvent ev;
  ev.repository = ctx.name();
  ev.operation = s.retract ? "retract-fact" : "assert-fact";
  ev.predicate = s.predicate;
  for (const Value* side : {&subject, &object}) {
    const auto* ref = std::get_if<ObjectRef>(side);
    if (ref && ref->level == 0) {
      if (const Individual* ind = ctx.find_individual(ref->id)) {
        ev.ref = *ref;
        ev.concept_name = ind->concept_name;
        ev.content_critical = ctx.is_content_critical(ind->concept_name);
        break;
      }
    }
  }
  e.event = ev;
  return e;
}

Engine::Effects Engine::apply_one(const ScenarioStmt& s, Repository& ctx, uint64_t) {
  if (scenarios_.count(s.name))
    fail(Errc::duplicate_name, "scenario '" + s.name + "' already defined");
  if (s.steps.empty()) fail(Errc::bad_spec, "scenario '" + s.name + "' has no steps");
  Scenario scenario;
  scenario.name = s.name;
  scenario.guard = s.guard;
  ResolveScope scope;
  scope.repo = &ctx;
  scope.dynamic_constants = {"user", "payload"};
  resolve_formula(scenario.guard, scope);  // guard must be closed
  scenario.steps = s.steps;
  scenario.repository = ctx.name();
  scenarios_.emplace(s.name, std::move(scenario));
  return {};
}

Engine::Effects Engine::apply_one(const CoordinateStmt& s, Repository&, uint64_t) {
  profiles_.coordinates().declare(s.name, s.values);
  return {};
}

GeneralizedValue Engine::make_generalized(const GvSpec& spec) const {
  std::map<GeneralizedValue::Tuple, Value> table;
  for (const auto& [tuple, value] : spec.entries) {
    if (!table.emplace(tuple, value).second)
      fail(Errc::bad_spec, "duplicate table entry in generalized value");
  }
  return GeneralizedValue::make(spec.coords, std::move(table), profiles_.coordinates());
}

Engine::Effects Engine::apply_one(const GeneralizedStmt& s, Repository&, uint64_t) {
  profiles_.define_generalized(s.name, make_generalized(s.spec));
  return {};
}

Engine::Effects Engine::apply_one(const CostModelStmt& s, Repository&, uint64_t) {
  CostModel model;
  model.name = s.name;
  for (const auto& stage : s.stages) {
    CostStage cs;
    cs.duration = stage.duration;
    cs.overhead = stage.overhead_ref ? profiles_.require_generalized(*stage.overhead_ref)
                                     : make_generalized(stage.overhead);
    model.stages.push_back(std::move(cs));
  }
  profiles_.define_cost_model(std::move(model));
  return {};
}

Engine::Effects Engine::apply_one(const ProfileUserStmt& s, Repository&, uint64_t) {
  UserProfile profile;
  profile.user = s.user;
  for (const auto& [coord, value] : s.coordinates) {
    profiles_.coordinates().require(coord);
    profile.coordinates[coord] = value;
  }
  if (const UserProfile* existing = profiles_.find_user(s.user)) profile.role = existing->role;
  profiles_.define_user(std::move(profile));
  return {};
}

Engine::Effects Engine::apply_one(const RoleAssignStmt& s, Repository&, uint64_t) {
  role_from_name(s.role);  // validate before touching the registry
  profiles_.set_role(s.user, s.role);
  return {};
}

Engine::Effects Engine::apply_one(const GrantStmt& s, Repository&, uint64_t) {
  matrix_.grant(role_from_name(s.role), access_op_from_name(s.op),
                access_kind_from_name(s.kind), s.repo);
  return {};
}

Engine::Effects Engine::apply_one(const BindStmt& s, Repository&, uint64_t) {
  ScriptBinding binding;
  binding.event = event_type_from_name(s.event);
  if (s.role_guard) binding.role_guard = role_from_name(*s.role_guard);
  for (const auto& [coord, value] : s.coordinate_guards) {
    profiles_.coordinates().require(coord);
    binding.coordinate_guards.emplace_back(coord, value);
  }
  if (!scenarios_.count(s.scenario))
    fail(Errc::unknown_object, "scenario '" + s.scenario + "' not defined");
  binding.scenario = s.scenario;
  bindings_.push_back(std::move(binding));
  return {};
}

Engine::Effects Engine::apply_one(const ViewStmt& s, Repository&, uint64_t pos) {
  register_view(s, pos);
  Effects e;
  e.new_view = s.name;
  return e;
}

Engine::Effects Engine::apply_one(const TickStmt&, Repository&, uint64_t) {
  Effects e;
  e.is_tick = true;
  return e;
}

Engine::Effects Engine::apply_one(const RefreshStmt& s, Repository&, uint64_t) {
  view(s.view);  // throws unknown_view before the statement is logged
  Effects e;
  e.refresh_view = s.view;
  return e;
}

Engine::Effects Engine::apply(const Statement& stmt, const std::string& repo_ctx, uint64_t pos) {
  Repository& ctx = ensure_repo(repo_ctx, pos);
  return std::visit([&](const auto& s) { return apply_one(s, ctx, pos); }, stmt);
}

// --- views ---

void Engine::register_view(const ViewStmt& stmt, uint64_t) {
  if (views_.count(stmt.name)) fail(Errc::duplicate_view, "view '" + stmt.name + "'");
  if (!has_repo(stmt.repo)) fail(Errc::bad_definition, "unknown repository '" + stmt.repo + "'");
  Repository& source = repo(stmt.repo);
  const ConceptDef* concept_def = source.find_concept(stmt.from_concept);
  if (!concept_def)
    fail(Errc::bad_definition, "view '" + stmt.name + "' sources unknown concept '" +
                                   stmt.from_concept + "'");
  for (const auto& attr : stmt.projection)
    if (!concept_def->find_attribute(attr))
      fail(Errc::bad_definition, "projection attribute '" + attr + "' does not exist on " +
                                     stmt.from_concept);

  ViewDefinition v;
  v.name = stmt.name;
  v.repository = stmt.repo;
  v.from_concept = stmt.from_concept;
  v.projection = stmt.projection;
  v.where = stmt.where.value_or(Formula::constant_of(true));
  try {
    ResolveScope scope;
    scope.repo = &source;
    scope.self_var = "x";
    scope.self_concept = concept_def;
    resolve_formula(v.where, scope);
  } catch (const EngineError& e) {
    fail(Errc::bad_definition, "view '" + stmt.name + "': " + e.what());
  }

  if (stmt.mode == "automatic") v.policy = {UpdateMode::automatic, 0};
  else if (stmt.mode == "manual") v.policy = {UpdateMode::manual, 0};
  else {
    if (stmt.interval < 1) fail(Errc::bad_definition, "periodic interval must be >= 1");
    v.policy = {UpdateMode::periodic, stmt.interval};
  }
  if (stmt.visibility == "public") v.visibility = Visibility::public_site;
  else if (stmt.visibility == "registered") v.visibility = Visibility::registered;
  else v.visibility = Visibility::corporate;

  const AssignmentCoordinate* device = profiles_.coordinates().find(config_.device_coordinate);
  if (!device)
    fail(Errc::bad_definition, "device coordinate '" + config_.device_coordinate +
                                   "' is not declared; declare it before registering views");
  std::map<std::string, ViewTemplate> templates;
  for (const auto& t : stmt.templates) {
    if (std::find(device->values.begin(), device->values.end(), t.device) ==
        device->values.end())
      fail(Errc::bad_definition, "'" + t.device + "' is not a value of the device coordinate");
    ViewTemplate vt;
    vt.sections = t.sections;
    vt.max_rows = t.max_rows;
    vt.multimedia = t.multimedia;
    templates[t.device] = std::move(vt);
  }
  for (const auto& value : device->values)
    if (!templates.count(value))
      fail(Errc::bad_definition, "view '" + stmt.name + "' has no template for device '" +
                                     value + "'");
  v.templates = std::move(templates);

  v.source_concepts = mentioned_domains(v.where);
  v.source_concepts.insert(v.from_concept);
  // keep only names that are concepts of the source repository
  for (auto it = v.source_concepts.begin(); it != v.source_concepts.end();) {
    if (!source.find_concept(*it)) it = v.source_concepts.erase(it);
    else ++it;
  }
  v.source_predicates = mentioned_predicates(v.where);

  views_.emplace(stmt.name, std::move(v));
}

const ViewDefinition& Engine::view(const std::string& name) const {
  auto it = views_.find(name);
  if (it == views_.end()) fail(Errc::unknown_view, "'" + name + "'");
  return it->second;
}

std::vector<std::string> Engine::view_names() const {
  std::vector<std::string> out;
  for (const auto& [name, v] : views_) { (void)v; out.push_back(name); }
  return out;
}

void Engine::rerender(const std::string& view_name, const std::string& reason, uint64_t pos) {
  const ViewDefinition& v = view(view_name);
  const Repository& source = repo(v.repository);
  auto& per_device = rendered_[view_name];
  for (const auto& [device, tmpl] : v.templates) {
    RenderedView rv;
    rv.view = view_name;
    rv.device = device;
    rv.body = render_body(source, v, device, tmpl, {}, pos);
    rv.position = pos;
    per_device[device] = std::move(rv);
  }
  rerenders_.push_back({pos, view_name, reason});
}

const RenderedView& Engine::materialized(const std::string& view_name,
                                         const std::string& device) const {
  auto it = rendered_.find(view_name);
  if (it == rendered_.end()) fail(Errc::unknown_view, "'" + view_name + "'");
  auto dt = it->second.find(device);
  if (dt == it->second.end())
    fail(Errc::unknown_view, "view '" + view_name + "' has no render for device '" + device + "'");
  return dt->second;
}

bool Engine::view_depends_on(const ViewDefinition& v, const ChangeEvent& event) const {
  if (v.repository != event.repository) return false;
  if (!event.concept_name.empty() && v.source_concepts.count(event.concept_name)) return true;
  if (!event.predicate.empty() && v.source_predicates.count(event.predicate)) return true;
  if (event.ref && event.ref->level == 0) {
    const Repository& source = repo(v.repository);
    for (const auto& pred : v.source_predicates) {
      auto it = source.interpretation().facts.find(pred);
      if (it == source.interpretation().facts.end()) continue;
      for (const auto& [subj, obj] : it->second) {
        if (subj == Value(*event.ref) || obj == Value(*event.ref)) return true;
      }
    }
  }
  return false;
}

std::vector<std::string> Engine::on_change(const ChangeEvent& event) {
  if (event.position != last_event_position_ + 1)
    fail(Errc::out_of_order_event,
         "expected position " + std::to_string(last_event_position_ + 1) + ", got " +
             std::to_string(event.position));
  last_event_position_ = event.position;
  std::vector<std::string> out;
  if (!event.content_critical) return out;
  for (const auto& [name, v] : views_) {
    if (v.policy.mode != UpdateMode::automatic) continue;
    if (!view_depends_on(v, event)) continue;
    rerender(name, "automatic", event.position);
    out.push_back(name);
  }
  return out;
}

// --- sessions / access ---

uint64_t Engine::open_session(const std::string& user, DispatchResult* login_result) {
  const UserProfile& profile = profiles_.require_user(user);
  Session& s = sessions_.open(user, profile, position());
  DispatchResult r = dispatch_event(EventType::login, s.id, "");
  if (login_result) *login_result = std::move(r);
  return s.id;
}

void Engine::close_session(uint64_t id) {
  if (id == kSystemSession) fail(Errc::bad_spec, "the system session cannot be closed");
  sessions_.close(id, position());
}

Decision Engine::check_access(uint64_t session_id, const std::string& repo_name, AccessKind kind,
                              AccessOp op) const {
  const Session& s = sessions_.require(session_id);
  return authorize(matrix_, s, repo_name, kind, op);
}

std::string Engine::registration_of(const Session& s) const {
  auto it = s.profile.coordinates.find(config_.registration_coordinate);
  return it == s.profile.coordinates.end() ? std::string() : it->second;
}

bool Engine::visibility_allows(const ViewDefinition& v, const Session& s) const {
  if (v.visibility == Visibility::public_site) return true;
  std::string registration = registration_of(s);
  if (v.visibility == Visibility::corporate) return registration == config_.corporate_value;
  return std::find(config_.registered_values.begin(), config_.registered_values.end(),
                   registration) != config_.registered_values.end();
}

RenderedView Engine::render_view(const std::string& view_name, uint64_t session_id) {
  const Session& s = sessions_.require(session_id);
  const ViewDefinition& v = view(view_name);
  Decision d = authorize(matrix_, s, v.repository, AccessKind::data, AccessOp::read);
  if (!d.allow) fail(Errc::denied, d.reason);
  if (!visibility_allows(v, s)) fail(Errc::denied, "visibility");

  const AssignmentCoordinate& device_coord =
      profiles_.coordinates().require(config_.device_coordinate);
  std::string device;
  auto it = s.profile.coordinates.find(config_.device_coordinate);
  device = it != s.profile.coordinates.end() ? it->second : device_coord.values.front();
  auto tmpl = v.templates.find(device);
  if (tmpl == v.templates.end())
    fail(Errc::bad_definition, "no template for device '" + device + "'");

  std::vector<std::pair<std::string, std::string>> profile_lines;
  profile_lines.emplace_back("user", s.user);
  auto prefs = s.profile.coordinates.find(config_.preferences_coordinate);
  profile_lines.emplace_back("preferences",
                             prefs != s.profile.coordinates.end() ? prefs->second : "-");
  std::string registration = registration_of(s);
  profile_lines.emplace_back("registration", registration.empty() ? "-" : registration);

  RenderedView rv;
  rv.view = view_name;
  rv.device = device;
  rv.profile_lines = profile_lines;
  rv.body = render_body(repo(v.repository), v, device, tmpl->second, profile_lines, position());
  rv.position = position();
  return rv;
}

std::vector<std::string> Engine::visible_views(uint64_t session_id) const {
  const Session& s = sessions_.require(session_id);
  std::vector<std::string> out;
  for (const auto& [name, v] : views_) {
    Decision d = authorize(matrix_, s, v.repository, AccessKind::data, AccessOp::read);
    if (!d.allow) continue;
    if (!visibility_allows(v, s)) continue;
    out.push_back(name);
  }
  return out;
}

DispatchResult Engine::dispatch_event(EventType type, uint64_t session_id,
                                      const std::string& payload) {
  const Session& s = sessions_.require(session_id);
  if (!s.open) fail(Errc::closed_session, "session " + std::to_string(session_id));

  DispatchResult result;
  for (const auto& binding : bindings_) {
    if (binding.event != type) continue;
    if (binding.role_guard && *binding.role_guard != role_from_name(s.profile.role)) continue;
    bool coords_match = true;
    for (const auto& [coord, value] : binding.coordinate_guards) {
      auto it = s.profile.coordinates.find(coord);
      if (it == s.profile.coordinates.end() || it->second != value) {
        coords_match = false;
        break;
      }
    }
    if (!coords_match) continue;

    const Scenario& scenario = scenarios_.at(binding.scenario);
    Repository& scenario_repo = repo(scenario.repository);
    EvalContext guard_ctx;
    guard_ctx.repo = &scenario_repo;
    guard_ctx.dynamic_constants = {{"user", Value(s.user)}, {"payload", Value(payload)}};
    if (!eval_formula(scenario.guard, guard_ctx)) continue;

    // session-bound names first, then constants, then bare enum symbols
    auto ground_step_term = [&](const TermExpr& term) -> Value {
      if (term.kind == TermExpr::Kind::name) {
        auto dc = guard_ctx.dynamic_constants.find(term.name);
        if (dc != guard_ctx.dynamic_constants.end()) return dc->second;
      }
      return ground_term(scenario_repo, term);
    };

    for (size_t k = 0; k < scenario.steps.size(); ++k) {
      const ScenarioStep& step = scenario.steps[k];
      if (step.kind == ScenarioStep::Kind::deny) {
        result.actions.push_back("deny(\"" + escape_text(step.reason) + "\")");
        break;  // deliberate stop; remaining steps do not run
      }
      if (step.kind == ScenarioStep::Kind::render_view) {
        try {
          render_view(step.view, session_id);
          result.actions.push_back("render-view(" + step.view + ")");
        } catch (const EngineError& e) {
          result.failures.push_back({scenario.name, k + 1, errc_name(e.code())});
          break;
        }
        continue;
      }
      // data-writing steps are authorized before they act
      Decision d = authorize(matrix_, s, scenario.repository, AccessKind::data, AccessOp::write);
      if (!d.allow) {
        result.failures.push_back({scenario.name, k + 1, d.reason});
        break;  // atomic prefix: earlier effects persist, later steps do not run
      }
      if (step.kind == ScenarioStep::Kind::assert_frame) {
        FactStmt fact;
        fact.predicate = step.predicate;
        fact.subject = TermExpr::lit(ground_step_term(step.args[0]));
        fact.object = TermExpr::lit(ground_step_term(step.args[1]));
        execute_in(fact, scenario.repository);
        result.actions.push_back("assert-frame(" + step.predicate + ", " +
                                 to_text(fact.subject.literal) + ", " +
                                 to_text(fact.object.literal) + ")");
      } else if (step.kind == ScenarioStep::Kind::transition_state) {
        StateStmt st;
        st.concept_name = step.concept_name;
        st.identity = step.identity;
        st.cause = step.cause;
        for (const auto& [attr, term] : step.updates)
          st.updates.emplace_back(attr, TermExpr::lit(ground_step_term(term)));
        execute_in(st, scenario.repository);
        std::string key;
        for (const auto& v : step.identity) key += (key.empty() ? "" : ", ") + to_text(v);
        result.actions.push_back("transition-state(" + step.concept_name + "[" + key + "])");
      }
    }
  }
  return result;
}

// --- tower helpers ---

std::vector<uint64_t> Engine::extension_of(const std::string& repo_name,
                                           const ObjectRef& meta_ref) {
  Repository& r = repo(repo_name);
  MetaObject* meta = r.find_meta_mut(meta_ref.level, meta_ref.id);
  if (!meta) fail(Errc::unknown_object, "meta @" + std::to_string(meta_ref.level) + ":" +
                                            std::to_string(meta_ref.id));
  return refresh_extension(r, *meta, position());
}

Described Engine::describe_object(const std::string& repo_name, const ObjectRef& ref) {
  return describe(repo(repo_name), ref, position());
}

// --- log / replay ---

void Engine::attach_log_file(const std::string& path) {
  auto out = std::make_unique<std::ofstream>(path, std::ios::app);
  if (!*out) fail(Errc::load_error, "cannot open log file '" + path + "' for append");
  log_file_ = std::move(out);
}

void Engine::flush_log() {
  if (log_file_) log_file_->flush();
}

std::vector<LogRecord> Engine::read_log_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::load_error, "cannot open log file '" + path + "'");
  std::vector<LogRecord> records;
  std::string line;
  uint64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    size_t t1 = line.find('\t');
    size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t2 == std::string::npos)
      fail(Errc::corrupt_log, "position " + std::to_string(lineno) + ": malformed record");
    LogRecord r;
    try {
      r.position = std::stoull(line.substr(0, t1));
    } catch (const std::exception&) {
      fail(Errc::corrupt_log, "position " + std::to_string(lineno) + ": bad position field");
    }
    r.repo = line.substr(t1 + 1, t2 - t1 - 1);
    r.text = line.substr(t2 + 1);
    records.push_back(std::move(r));
  }
  return records;
}

void Engine::replay_records(const std::vector<LogRecord>& records, std::optional<uint64_t> to) {
  for (const auto& record : records) {
    if (to && record.position > *to) break;
    uint64_t expected = log_.size() + 1;
    if (record.position != expected)
      fail(Errc::corrupt_log, "position " + std::to_string(record.position) + ": expected " +
                                  std::to_string(expected));
    Statement stmt;
    try {
      stmt = parse_statement(record.text);
    } catch (const ParseError& e) {
      fail(Errc::corrupt_log, "position " + std::to_string(record.position) + ": " + e.what());
    }
    execute_in(stmt, record.repo);
  }
}

void Engine::load_log_file(const std::string& path, std::optional<uint64_t> to) {
  replay_records(read_log_file(path), to);
}

}  // namespace ocp
