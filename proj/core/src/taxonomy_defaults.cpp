// Copyright 2026 The SkillScope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "skillscope/taxonomy.hpp"

namespace skillscope {

namespace {

using C = CategoryId;

const std::vector<Language> kPy = {Language::Python};
const std::vector<Language> kJs = {Language::JavaScript, Language::TypeScript};
const std::vector<Language> kPyJs = {Language::Python, Language::JavaScript,
                                     Language::TypeScript};

Category make_category(CategoryId id,
                       std::vector<std::pair<const char*, const char*>> labels) {
  Category cat;
  cat.id = id;
  for (const auto& [code, description] : labels) {
    cat.labels.push_back({code, id, description});
  }
  return cat;
}

LocalizationRule rule(std::vector<CategoryId> candidates, const char* hint,
                      PatternKind kind, const char* pattern,
                      const std::vector<Language>& languages) {
  LocalizationRule r;
  r.candidates = std::move(candidates);
  if (hint != nullptr) r.label_hint = hint;
  r.kind = kind;
  r.pattern = pattern;
  r.languages = languages;
  return r;
}

Taxonomy build_default() {
  Taxonomy t;

  t.categories_.push_back(make_category(
      C::FileRead,
      {{"FR-SCRIPT", "Read local scripts, source files, or implementation files."},
       {"FR-REF", "Read local reference documents, guides, templates, or instruction files."},
       {"FR-DATA", "Read local input data, project files, datasets, or media files."},
       {"FR-CONFIG",
        "Read local configuration, state, database, session, environment, or queue files."}}));
  t.categories_.push_back(make_category(
      C::FileWrite,
      {{"FW-OUTPUT", "Write local output artifacts, such as reports or generated files."},
       {"FW-STATE",
        "Write local state data, such as databases, caches, logs, metrics, queues, or other "
        "persistent state files."},
       {"FW-CONFIG",
        "Write local configuration, environment, authentication, session, or browser-state "
        "files."},
       {"FW-STRUCTURE",
        "Create directories, project structures, template instances, or scaffold files."}}));
  t.categories_.push_back(make_category(
      C::SystemCommand,
      {{"SC-PY", "Execute local Python scripts or skill-provided scripts."},
       {"SC-CLI",
        "Execute shell, npm, npx, pip, docker, git, chmod, sqlite3, build, or test "
        "commands."}}));
  t.categories_.push_back(make_category(
      C::NetworkAccess,
      {{"NA-WEB", "Access websites, web pages, browser content, web search, or localhost "
                  "services."},
       {"NA-SERVICE", "Access remote platforms, cloud services, model services, or SaaS "
                      "systems."},
       {"NA-DOWNLOAD",
        "Clone, pull, or download remote repositories, images, models, datasets, or "
        "documents."}}));
  t.categories_.push_back(make_category(
      C::ExternalApi,
      {{"EA-DATA", "Access remote databases, metadata services, or search APIs."},
       {"EA-PLATFORM", "Access remote platform APIs or business-system APIs."},
       {"EA-AI", "Access remote AI, model, inference, or search APIs."}}));
  t.categories_.push_back(make_category(
      C::SecretAccess,
      {{"SA-KEY",
        "Access API keys, passwords, OAuth tokens, access tokens, or similar secrets."},
       {"SA-SESSION",
        "Access cookies, browser sessions, authentication state, or similar session data."},
       {"SA-ID",
        "Access identity-related information, such as email addresses, mailto fields, or "
        "user identifiers."}}));
  t.categories_.push_back(make_category(
      C::DependencyModification,
      {{"DM-PKG",
        "Install or update package dependencies through pip, uv, npm, or similar package "
        "managers."},
       {"DM-SYS",
        "Install system-level dependencies, browsers, OCR tools, Playwright, TeX, or "
        "similar system components."},
       {"DM-ENV",
        "Create or modify virtual environments, Conda environments, containers, or other "
        "execution environments."}}));
  t.categories_.push_back(make_category(
      C::SystemPermissionAccess,
      {{"SPA-RESOURCE", "Access system resources or related permissions."},
       {"SPA-IAM", "Manage IAM roles or permissions."},
       {"SPA-VALIDATION", "Perform security validation or permission checks."},
       {"SPA-ENFORCEMENT",
        "Enforce access restrictions or permission limits, including access-control and "
        "compliance checks."},
       {"SPA-SECURITY", "Perform security-related operations."}}));
  t.categories_.push_back(make_category(
      C::SecurityControl, {{"SEC-VALIDATION", "Validate inputs."},
                           {"SEC-QUERY", "Perform parameterized queries."},
                           {"SEC-RATE", "Apply rate limiting."}}));
  t.categories_.push_back(
      make_category(C::Observability, {{"OBS-LOG", "Produce structured logs."}}));
  t.categories_.push_back(
      make_category(C::Infrastructure, {{"INF-HEALTH", "Expose health-check endpoints."}}));

  const std::vector<CategoryId> net = {C::NetworkAccess, C::ExternalApi};

  t.rules_ = {
      // FILE_READ
      rule({C::FileRead}, nullptr, PatternKind::CallPrefix, "open(", kPy),
      rule({C::FileRead}, nullptr, PatternKind::MemberChain, "readFile(", kJs),
      rule({C::FileRead}, nullptr, PatternKind::MemberChain, "readFileSync(", kJs),
      rule({C::FileRead}, nullptr, PatternKind::MemberChain, "read_text(", kPy),
      rule({C::FileRead}, nullptr, PatternKind::MemberChain, "read_bytes(", kPy),
      rule({C::FileRead}, "FR-DATA", PatternKind::MemberChain, "json.load(", kPy),
      rule({C::FileRead}, "FR-DATA", PatternKind::MemberChain, "csv.reader(", kPy),
      rule({C::FileRead}, "FR-CONFIG", PatternKind::MemberChain, "load_dotenv(", kPy),
      rule({C::FileRead}, "FR-DATA", PatternKind::AttributeAccess, "sys.argv", kPy),
      rule({C::FileRead}, "FR-DATA", PatternKind::CallPrefix, "input(", kPy),
      rule({C::FileRead}, "FR-DATA", PatternKind::AttributeAccess, "process.argv", kJs),
      // FILE_WRITE
      rule({C::FileWrite}, nullptr, PatternKind::MemberChain, "write(", kPyJs),
      rule({C::FileWrite}, nullptr, PatternKind::MemberChain, "writelines(", kPy),
      rule({C::FileWrite}, nullptr, PatternKind::MemberChain, "writeFile(", kJs),
      rule({C::FileWrite}, nullptr, PatternKind::MemberChain, "writeFileSync(", kJs),
      rule({C::FileWrite}, nullptr, PatternKind::MemberChain, "createWriteStream(", kJs),
      rule({C::FileWrite}, nullptr, PatternKind::MemberChain, "write_text(", kPy),
      rule({C::FileWrite}, nullptr, PatternKind::MemberChain, "write_bytes(", kPy),
      rule({C::FileWrite}, "FW-STATE", PatternKind::MemberChain, "json.dump(", kPy),
      rule({C::FileWrite}, "FW-STRUCTURE", PatternKind::MemberChain, "mkdir(", kPyJs),
      rule({C::FileWrite}, "FW-STRUCTURE", PatternKind::MemberChain, "mkdirSync(", kJs),
      rule({C::FileWrite}, "FW-STRUCTURE", PatternKind::MemberChain, "makedirs(", kPy),
      // SYSTEM_COMMAND
      rule({C::SystemCommand}, "SC-CLI", PatternKind::MemberChain, "subprocess.", kPy),
      rule({C::SystemCommand}, "SC-CLI", PatternKind::MemberChain, "os.system(", kPy),
      rule({C::SystemCommand}, "SC-CLI", PatternKind::MemberChain, "os.popen(", kPy),
      rule({C::SystemCommand}, "SC-PY", PatternKind::CallPrefix, "exec(", kPy),
      rule({C::SystemCommand}, "SC-PY", PatternKind::MemberChain, "runpy.", kPy),
      rule({C::SystemCommand}, "SC-CLI", PatternKind::MemberChain, "exec(", kJs),
      rule({C::SystemCommand}, "SC-CLI", PatternKind::MemberChain, "execSync(", kJs),
      rule({C::SystemCommand}, "SC-CLI", PatternKind::MemberChain, "execFile(", kJs),
      rule({C::SystemCommand}, "SC-CLI", PatternKind::MemberChain, "spawn(", kJs),
      rule({C::SystemCommand}, "SC-CLI", PatternKind::MemberChain, "spawnSync(", kJs),
      rule({C::SystemCommand}, "SC-CLI", PatternKind::MemberChain, "child_process.", kJs),
      // NETWORK_ACCESS / EXTERNAL_API: ambiguous call families
      rule(net, nullptr, PatternKind::MemberChain, "requests.", kPy),
      rule(net, nullptr, PatternKind::CallPrefix, "fetch(", kJs),
      rule(net, nullptr, PatternKind::MemberChain, "axios.", kJs),
      rule(net, nullptr, PatternKind::MemberChain, "httpx.", kPy),
      rule(net, nullptr, PatternKind::MemberChain, "urlopen(", kPy),
      rule(net, nullptr, PatternKind::MemberChain, "aiohttp.", kPy),
      rule(net, nullptr, PatternKind::MemberChain, "http.get(", kJs),
      rule(net, nullptr, PatternKind::MemberChain, "https.get(", kJs),
      rule(net, nullptr, PatternKind::MemberChain, "http.request(", kJs),
      rule(net, nullptr, PatternKind::MemberChain, "https.request(", kJs),
      // NETWORK_ACCESS
      rule({C::NetworkAccess}, "NA-WEB", PatternKind::MemberChain, "socket.", kPy),
      rule({C::NetworkAccess}, "NA-DOWNLOAD", PatternKind::MemberChain, "urlretrieve(", kPy),
      rule({C::NetworkAccess}, "NA-DOWNLOAD", PatternKind::MemberChain, "clone_from(", kPy),
      rule({C::NetworkAccess}, "NA-WEB", PatternKind::MemberChain, "webbrowser.open(", kPy),
      // EXTERNAL_API: SDK-specific chains
      rule({C::ExternalApi}, "EA-AI", PatternKind::MemberChain, "completions.create(", kPyJs),
      rule({C::ExternalApi}, "EA-AI", PatternKind::MemberChain, "openai.", kPyJs),
      rule({C::ExternalApi}, "EA-PLATFORM", PatternKind::MemberChain, "boto3.client(", kPy),
      rule({C::ExternalApi}, "EA-PLATFORM", PatternKind::MemberChain, "boto3.resource(", kPy),
      rule({C::ExternalApi}, "EA-PLATFORM", PatternKind::MemberChain, "stripe.", kPyJs),
      rule({C::ExternalApi}, "EA-DATA", PatternKind::MemberChain, "googleapis.", kJs),
      rule({C::ExternalApi}, "EA-PLATFORM", PatternKind::MemberChain, "octokit.", kJs),
      // SECRET_ACCESS
      rule({C::SecretAccess}, nullptr, PatternKind::MemberChain, "os.getenv(", kPy),
      rule({C::SecretAccess}, nullptr, PatternKind::MemberChain, "environ.get(", kPy),
      rule({C::SecretAccess}, nullptr, PatternKind::AttributeAccess, "os.environ", kPy),
      rule({C::SecretAccess}, nullptr, PatternKind::AttributeAccess, "process.env.", kJs),
      rule({C::SecretAccess}, "SA-KEY", PatternKind::CallPrefix, "getpass(", kPy),
      rule({C::SecretAccess}, "SA-KEY", PatternKind::MemberChain, "getpass.getpass(", kPy),
      rule({C::SecretAccess}, "SA-KEY", PatternKind::MemberChain, "keyring.", kPy),
      rule({C::SecretAccess}, "SA-SESSION", PatternKind::AttributeAccess, "document.cookie",
           kJs),
      rule({C::SecretAccess}, "SA-SESSION", PatternKind::MemberChain, "cookies.get(", kPyJs),
      // DEPENDENCY_MODIFICATION
      rule({C::DependencyModification}, "DM-PKG", PatternKind::MemberChain, "pip.main(", kPy),
      rule({C::DependencyModification}, "DM-PKG", PatternKind::MemberChain, "ensurepip.", kPy),
      rule({C::DependencyModification}, "DM-ENV", PatternKind::MemberChain, "venv.create(",
           kPy),
      rule({C::DependencyModification}, "DM-ENV", PatternKind::MemberChain, "EnvBuilder(", kPy),
      rule({C::DependencyModification}, "DM-ENV", PatternKind::MemberChain, "docker.from_env(",
           kPy),
      rule({C::DependencyModification}, "DM-PKG", PatternKind::MemberChain, "npm.install(",
           kJs),
      rule({C::DependencyModification}, "DM-PKG", PatternKind::MemberChain,
           "npm.commands.install(", kJs),
      // SYSTEM_PERMISSION_ACCESS
      rule({C::SystemPermissionAccess}, "SPA-RESOURCE", PatternKind::MemberChain, "chmod(",
           kPyJs),
      rule({C::SystemPermissionAccess}, "SPA-RESOURCE", PatternKind::MemberChain, "chmodSync(",
           kJs),
      rule({C::SystemPermissionAccess}, "SPA-RESOURCE", PatternKind::MemberChain, "chown(",
           kPyJs),
      rule({C::SystemPermissionAccess}, "SPA-RESOURCE", PatternKind::MemberChain, "setuid(",
           kPy),
      rule({C::SystemPermissionAccess}, "SPA-RESOURCE", PatternKind::MemberChain, "setgid(",
           kPy),
      rule({C::SystemPermissionAccess}, "SPA-VALIDATION", PatternKind::MemberChain,
           "os.access(", kPy),
      rule({C::SystemPermissionAccess}, "SPA-IAM", PatternKind::MemberChain, "iam.", kPyJs),
      // SECURITY_CONTROL
      rule({C::SecurityControl}, "SEC-VALIDATION", PatternKind::MemberChain, "validate(",
           kPyJs),
      rule({C::SecurityControl}, "SEC-VALIDATION", PatternKind::MemberChain, "jsonschema.",
           kPy),
      rule({C::SecurityControl}, "SEC-VALIDATION", PatternKind::MemberChain, "shlex.quote(",
           kPy),
      rule({C::SecurityControl}, "SEC-VALIDATION", PatternKind::MemberChain, "sanitize(",
           kPyJs),
      rule({C::SecurityControl}, "SEC-QUERY", PatternKind::MemberChain, "cursor.execute(",
           kPy),
      rule({C::SecurityControl}, "SEC-RATE", PatternKind::CallPrefix, "RateLimiter(", kPyJs),
      rule({C::SecurityControl}, "SEC-RATE", PatternKind::MemberChain, "rate_limit(", kPy),
      // OBSERVABILITY
      rule({C::Observability}, "OBS-LOG", PatternKind::MemberChain, "logging.", kPy),
      rule({C::Observability}, "OBS-LOG", PatternKind::MemberChain, "logger.", kPyJs),
      rule({C::Observability}, "OBS-LOG", PatternKind::MemberChain, "console.", kJs),
      rule({C::Observability}, "OBS-LOG", PatternKind::MemberChain, "winston.", kJs),
      rule({C::Observability}, "OBS-LOG", PatternKind::MemberChain, "structlog.", kPy),
      // INFRASTRUCTURE
      rule({C::Infrastructure}, "INF-HEALTH", PatternKind::MemberChain, "app.route(", kPy),
      rule({C::Infrastructure}, "INF-HEALTH", PatternKind::MemberChain, "app.get(", kJs),
      rule({C::Infrastructure}, "INF-HEALTH", PatternKind::MemberChain, "app.listen(", kJs),
      rule({C::Infrastructure}, "INF-HEALTH", PatternKind::MemberChain, "router.get(", kJs),
      rule({C::Infrastructure}, "INF-HEALTH", PatternKind::MemberChain, "uvicorn.run(", kPy),
      rule({C::Infrastructure}, "INF-HEALTH", PatternKind::MemberChain, "add_api_route(", kPy),
  };

  return t;
}

}  // namespace

const Taxonomy& default_taxonomy() {
  static const Taxonomy taxonomy = [] {
    Taxonomy t = build_default();
    t.validate();
    return t;
  }();
  return taxonomy;
}

}  // namespace skillscope
