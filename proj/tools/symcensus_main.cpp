#include "symcensus/census.hpp"
#include "symcensus/cm.hpp"
#include "symcensus/modforms.hpp"
#include "symcensus/weil_deligne.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using symcensus::Int;
using symcensus::QmodZ;

Int parse_int(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    Int value = 0;
    try {
        value = std::stoll(text, &used);
    } catch (const std::exception&) {
        throw std::domain_error(what + ": expected an integer, got '" + text + "'");
    }
    if (used != text.size())
        throw std::domain_error(what + ": expected an integer, got '" + text + "'");
    return value;
}

QmodZ parse_rational(const std::string& text, const std::string& what) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return QmodZ(parse_int(text, what), 1);
    return QmodZ(parse_int(text.substr(0, slash), what),
                 parse_int(text.substr(slash + 1), what));
}

std::string trim(const std::string& s) {
    const auto from = s.find_first_not_of(" \t\r");
    if (from == std::string::npos) return {};
    const auto to = s.find_last_not_of(" \t\r");
    return s.substr(from, to - from + 1);
}

// key = value lines; '#' starts a comment; keys supply census sweep defaults
std::map<std::string, std::string> read_config(const std::string& path) {
    static const std::vector<std::string> known{"weight", "sym", "prime", "max-i", "format"};
    std::ifstream in(path);
    if (!in) throw std::domain_error("cannot read config file '" + path + "'");
    std::map<std::string, std::string> values;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::domain_error("config line is not key = value: '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw std::domain_error("unknown config key '" + key + "'");
        if (value.empty()) throw std::domain_error("config key '" + key + "' has no value");
        values[key] = value;
    }
    return values;
}

int jobs_from_env() {
    const char* raw = std::getenv("SYMCENSUS_JOBS");
    if (raw == nullptr || *raw == '\0') return 1;
    const Int jobs = parse_int(raw, "SYMCENSUS_JOBS");
    if (jobs < 1 || jobs > 1024)
        throw std::domain_error("SYMCENSUS_JOBS must be between 1 and 1024");
    return static_cast<int>(jobs);
}

// [ur:|rp:|rt:]LEVEL[:img,img,...][@a/b] -- images default to one generator
// of full order each; level 0 is the unramified character
symcensus::LocalCharacter parse_character(std::string spec, Int p, bool extension_allowed) {
    QmodZ unif = QmodZ::zero();
    const auto at = spec.find('@');
    if (at != std::string::npos) {
        unif = parse_rational(spec.substr(at + 1), "uniformizer value");
        spec.erase(at);
    }

    symcensus::LocalField field = symcensus::base_field(p);
    if (extension_allowed) field = symcensus::unramified_quadratic(p);
    for (const auto& [tag, pick] :
         {std::pair<std::string, symcensus::LocalField>{"ur:", symcensus::unramified_quadratic(p)},
          {"rp:", symcensus::ramified_quadratic(p, false)},
          {"rt:", symcensus::ramified_quadratic(p, true)}}) {
        if (spec.rfind(tag, 0) != 0) continue;
        if (!extension_allowed)
            throw std::domain_error("extension prefix '" + tag + "' is only valid with sc");
        field = pick;
        spec.erase(0, tag.size());
        break;
    }

    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string piece; std::getline(ss, piece, ':');) parts.push_back(piece);
    if (parts.empty() || parts.size() > 2)
        throw std::domain_error("character spec must be [ext:]level[:images][@unif]");

    const Int level = parse_int(parts[0], "character level");
    if (level == 0) {
        if (parts.size() > 1) throw std::domain_error("level 0 takes no unit images");
        return symcensus::LocalCharacter::unramified_twist(field, unif);
    }
    if (level < 0 || level > 12) throw std::domain_error("character level out of range");

    const auto& group = symcensus::unit_quotient(field, static_cast<int>(level)).group();
    std::vector<QmodZ> images;
    if (parts.size() == 2) {
        std::stringstream imgs(parts[1]);
        for (std::string piece; std::getline(imgs, piece, ',');)
            images.push_back(parse_rational(piece, "unit image"));
    } else {
        for (Int d : group->invariant_factors()) images.emplace_back(1, d);
    }
    if (static_cast<int>(images.size()) != group->rank())
        throw std::domain_error("expected " + std::to_string(group->rank()) +
                                " unit images, got " + std::to_string(images.size()));
    return symcensus::LocalCharacter(field, static_cast<int>(level), images, unif);
}

const char* summand_name(symcensus::SymSummand::Kind kind) {
    switch (kind) {
        case symcensus::SymSummand::Kind::OneDim: return "one-dim";
        case symcensus::SymSummand::Kind::SteinbergBlock: return "steinberg";
        case symcensus::SymSummand::Kind::Induced: return "induced";
    }
    return "unknown";
}

void run_sym_cond(Int p, const std::string& variant, Int n,
                  const std::vector<std::string>& eta_specs) {
    if (p == 2 || !symcensus::is_prime(p)) throw std::domain_error("--p must be an odd prime");
    if (n < 1) throw std::domain_error("--n must be >= 1");

    std::optional<symcensus::Gl2Parameter> pi;
    if (variant == "ps") {
        if (eta_specs.size() > 2) throw std::domain_error("ps takes at most two --eta-spec");
        auto mu1 = eta_specs.size() > 0 ? parse_character(eta_specs[0], p, false)
                                        : symcensus::LocalCharacter::trivial(symcensus::base_field(p));
        auto mu2 = eta_specs.size() > 1 ? parse_character(eta_specs[1], p, false)
                                        : symcensus::LocalCharacter::trivial(symcensus::base_field(p));
        pi = symcensus::Gl2Parameter::principal_series(mu1, mu2);
    } else if (variant == "sp") {
        if (eta_specs.size() > 1) throw std::domain_error("sp takes at most one --eta-spec");
        auto mu = eta_specs.empty() ? symcensus::LocalCharacter::trivial(symcensus::base_field(p))
                                    : parse_character(eta_specs[0], p, false);
        pi = symcensus::Gl2Parameter::steinberg(mu);
    } else if (variant == "sc") {
        if (eta_specs.size() > 1) throw std::domain_error("sc takes at most one --eta-spec");
        auto eta = eta_specs.empty() ? parse_character("ur:1", p, true)
                                     : parse_character(eta_specs[0], p, true);
        pi = symcensus::Gl2Parameter::induced(eta);
    } else {
        throw std::domain_error("--variant must be ps, sp, or sc");
    }

    const auto data = symcensus::sym_power_certified(*pi, static_cast<int>(n));
    bool degenerate = false;
    for (const auto& s : data.summands) degenerate = degenerate || s.steinberg_degenerate;

    std::cout << "variant=" << variant << '\n'
              << "p=" << p << '\n'
              << "n=" << data.n << '\n'
              << "base_conductor=" << data.base_conductor << '\n'
              << "conductor=" << data.conductor << '\n'
              << "bound=" << data.certified_bound << '\n'
              << "dim=" << data.total_dim() << '\n'
              << "degenerate=" << (degenerate ? 1 : 0) << '\n';
    for (const auto& s : data.summands)
        std::cout << "summand=" << summand_name(s.kind) << " dim=" << s.dim
                  << " conductor=" << s.conductor << '\n';
}

Int resolved(const CLI::Option* opt, Int flag_value,
             const std::map<std::string, std::string>& config, const std::string& key) {
    if (opt->count() > 0) return flag_value;
    const auto it = config.find(key);
    if (it == config.end())
        throw std::domain_error("missing --" + key + " (no flag and no config default)");
    return parse_int(it->second, "config " + key);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact conductor calculus for degree-n lifts, cusp form dimensions,\n"
                 "induced-form counts, and lower-bound census tables."};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "key = value file with census sweep defaults");

    auto* dim_cmd = app.add_subcommand("dim", "Cusp form dimensions at a given weight and level");
    Int dim_weight = 0, dim_level = 0;
    bool dim_new_only = false, dim_table = false;
    dim_cmd->add_option("--weight", dim_weight, "even weight k >= 2")->required();
    dim_cmd->add_option("--level", dim_level, "level N >= 1")->required();
    dim_cmd->add_flag("--new", dim_new_only, "print the new subspace dimension");
    dim_cmd->add_flag("--table", dim_table, "print a CSV row k,N,dim_full,dim_new");

    auto* cm_cmd = app.add_subcommand("cm-count", "Count induced (CM) eigenforms at weight and level");
    Int cm_weight = 0, cm_level = 0;
    bool cm_breakdown = false;
    cm_cmd->add_option("--weight", cm_weight, "even weight k >= 2")->required();
    cm_cmd->add_option("--level", cm_level, "level N >= 1")->required();
    cm_cmd->add_flag("--breakdown", cm_breakdown, "CSV rows d,norm_m,count per discriminant");

    auto* sym_cmd = app.add_subcommand("sym-cond", "Certified symmetric power conductor of a local parameter");
    Int sym_p = 0, sym_n = 0;
    std::string sym_variant;
    std::vector<std::string> sym_eta;
    sym_cmd->add_option("--p", sym_p, "odd residue prime")->required();
    sym_cmd->add_option("--variant", sym_variant, "ps | sp | sc")->required();
    sym_cmd->add_option("--n", sym_n, "symmetric power degree >= 1")->required();
    sym_cmd->add_option("--eta-spec", sym_eta,
                        "character data [ur:|rp:|rt:]level[:img,img,...][@a/b]; repeat for ps");

    auto* census_cmd = app.add_subcommand("census", "Lower-bound table for lift counts at levels p^i");
    Int census_weight = 0, census_sym = 0, census_prime = 0, census_max_i = 0;
    std::string census_format;
    auto* opt_weight = census_cmd->add_option("--weight", census_weight, "even weight k >= 2");
    auto* opt_sym = census_cmd->add_option("--sym", census_sym, "symmetric power degree n >= 2");
    auto* opt_prime = census_cmd->add_option("--prime", census_prime, "odd prime p");
    auto* opt_max_i = census_cmd->add_option("--max-i", census_max_i, "largest conductor exponent");
    auto* opt_format = census_cmd->add_option("--format", census_format, "csv | json");

    auto* weights_cmd = app.add_subcommand("weights", "Dominant weight vector of the degree-n lift");
    Int w_weight = 0, w_sym = 0;
    auto* opt_w_weight = weights_cmd->add_option("--weight", w_weight, "even weight k >= 2");
    auto* opt_w_sym = weights_cmd->add_option("--sym", w_sym, "symmetric power degree n >= 1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        std::map<std::string, std::string> config;
        if (!config_path.empty()) config = read_config(config_path);

        if (app.got_subcommand(dim_cmd)) {
            const Int full = symcensus::dim_cusp(dim_weight, dim_level);
            const Int fresh = symcensus::dim_new(dim_weight, dim_level);
            if (dim_table)
                std::cout << "k,N,dim_full,dim_new\n"
                          << dim_weight << ',' << dim_level << ',' << full << ',' << fresh << '\n';
            else
                std::cout << (dim_new_only ? fresh : full) << '\n';
        } else if (app.got_subcommand(cm_cmd)) {
            const auto counts = symcensus::cm_count(cm_weight, cm_level);
            if (cm_breakdown) {
                std::cout << "d,norm_m,count\n";
                for (const auto& row : counts.breakdown)
                    std::cout << row.d << ',' << row.modulus_norm << ',' << row.count << '\n';
            } else {
                std::cout << counts.total << '\n';
            }
        } else if (app.got_subcommand(sym_cmd)) {
            run_sym_cond(sym_p, sym_variant, sym_n, sym_eta);
        } else if (app.got_subcommand(census_cmd)) {
            const Int k = resolved(opt_weight, census_weight, config, "weight");
            const Int n = resolved(opt_sym, census_sym, config, "sym");
            const Int p = resolved(opt_prime, census_prime, config, "prime");
            Int i_max = 1;
            if (opt_max_i->count() > 0) i_max = census_max_i;
            else if (auto it = config.find("max-i"); it != config.end())
                i_max = parse_int(it->second, "config max-i");
            std::string format = "csv";
            if (opt_format->count() > 0) format = census_format;
            else if (auto it = config.find("format"); it != config.end()) format = it->second;

            const auto rows = symcensus::census(k, n, p, i_max, jobs_from_env());
            std::cout << symcensus::emit(rows, format);
        } else if (app.got_subcommand(weights_cmd)) {
            const Int k = resolved(opt_w_weight, w_weight, config, "weight");
            const Int n = resolved(opt_w_sym, w_sym, config, "sym");
            const auto mu = symcensus::weight_mu(k, n);
            for (std::size_t j = 0; j < mu.entries.size(); ++j)
                std::cout << (j ? "," : "") << mu.entries[j];
            std::cout << '\n';
        }
    } catch (const symcensus::invariant_violation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
