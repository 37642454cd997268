// Verification driver: parses JSON inputs, dispatches the identity checks,
// prints a JSON report on stdout and a human summary on stderr.
//
// Exit codes: 0 identity holds, 1 identity fails, 2 invalid input,
// 3 interpolation failure, 4 precondition violation.

#include "prepchi/io.hpp"
#include "prepchi/sweep.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace prepchi;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_mismatch = 1;
constexpr int exit_bad_input = 2;
constexpr int exit_interpolation = 3;
constexpr int exit_precondition = 4;
constexpr int max_sweep_n = 5;  // documented desk scale

std::vector<std::uint64_t> parse_primes(const std::string& text) {
    if (text.empty() || text == "auto") return {};
    std::vector<std::uint64_t> primes;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        std::uint64_t p = std::stoull(tok);
        if (!is_prime(p)) throw std::invalid_argument("--primes: " + tok + " is not prime");
        for (std::uint64_t q : primes)
            if (q == p) throw std::invalid_argument("--primes: duplicate " + tok);
        primes.push_back(p);
    }
    return primes;
}

std::set<int> parse_index_set(const std::string& text) {
    std::set<int> out;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) out.insert(std::stoi(tok));
    return out;
}

void emit(const Json& report, const std::string& summary) {
    std::cout << report.dump(2) << std::endl;
    std::cerr << summary << std::endl;
}

int cmd_eq4(const std::string& setup_path, const std::string& j_override,
            const std::string& primes_text) {
    FiltrationSetup<Rational> s = setup_from_json(load_json_file(setup_path));
    if (!j_override.empty()) {
        s.J = parse_index_set(j_override);
        s.k = static_cast<int>(s.J.size());
    }
    auto v = validate_setup(s);
    if (!v.ok) {
        emit(Json{{"error", "invalid setup " + v.item + ": " + v.message}},
             "eq4: invalid setup " + v.item);
        return exit_bad_input;
    }
    MainLemmaReport r = verify_mainlemma(s, parse_primes(primes_text));
    emit(to_json(r), std::string("eq4: ") + (r.pass ? "PASS" : "FAIL") +
                         ", recipe = " + std::to_string(r.recipe));
    return r.pass ? exit_ok : exit_mismatch;
}

int cmd_eq6(const std::string& quiver_path, const std::string& module_path, int vertex,
            const std::string& fword_text, const std::string& primes_text) {
    QuiverGraph g = quiver_from_json(load_json_file(quiver_path));
    LambdaModule<Rational> m = module_from_json(load_json_file(module_path), g);
    auto v = validate_module(m);
    if (!v.ok) {
        emit(Json{{"error", v.message}}, "eq6: invalid module: " + v.message);
        return exit_bad_input;
    }
    FWord u = parse_fword(fword_text);
    u.check(cartan_matrix(g));
    if (!(u.weight() == dimvec(m))) {
        emit(Json{{"error", "f-word weight differs from the dimension vector"}},
             "eq6: weight mismatch");
        return exit_bad_input;
    }
    GenFormReport r = verify_genform(m, vertex, u, parse_primes(primes_text));
    if (!r.precondition_ok) {
        emit(to_json(r), "eq6: precondition violated: " + r.message);
        return exit_precondition;
    }
    emit(to_json(r), std::string("eq6: ") + (r.pass ? "PASS" : "FAIL") + ", lhs = " +
                         to_string(r.lhs) + ", rhs = " + to_string(r.rhs));
    return r.pass ? exit_ok : exit_mismatch;
}

int cmd_delta(const std::string& quiver_path, const std::string& module_path,
              const std::string& word_text, const std::string& fword_text,
              const std::string& primes_text) {
    QuiverGraph g = quiver_from_json(load_json_file(quiver_path));
    LambdaModule<Rational> m = module_from_json(load_json_file(module_path), g);
    auto v = validate_module(m);
    if (!v.ok) {
        emit(Json{{"error", v.message}}, "delta: invalid module: " + v.message);
        return exit_bad_input;
    }
    FreeElement u;
    if (!word_text.empty()) {
        u.add_term(parse_word(word_text), 1);
    } else if (!fword_text.empty()) {
        FWord f = parse_fword(fword_text);
        u = expand_fword(f, cartan_matrix(g));
    } else {
        throw std::invalid_argument("delta: need --word or --fword");
    }
    DeltaResult r = delta_eval_detailed(m, u, parse_primes(primes_text));
    Json j;
    j["value"] = to_json(r.value);
    j["curve"] = curve_to_json(r.curve);
    j["primes"] = r.primes;
    emit(j, "delta: value = " + to_string(r.value));
    return exit_ok;
}

int cmd_diagram(const std::string& setup_path, const std::string& format) {
    FiltrationSetup<Rational> s = setup_from_json(load_json_file(setup_path));
    auto v = validate_setup(s);
    if (!v.ok) {
        emit(Json{{"error", "invalid setup " + v.item + ": " + v.message}},
             "diagram: invalid setup " + v.item);
        return exit_bad_input;
    }
    Diagram d = build_diagram(s, adapted_basis(s));
    if (format == "text")
        std::cout << render_diagram(d);
    else
        emit(to_json(d), render_diagram(d));
    return exit_ok;
}

int cmd_adapted_basis(const std::string& setup_path) {
    FiltrationSetup<Rational> s = setup_from_json(load_json_file(setup_path));
    auto v = validate_setup(s);
    if (!v.ok) {
        emit(Json{{"error", "invalid setup " + v.item + ": " + v.message}},
             "adapted-basis: invalid setup " + v.item);
        return exit_bad_input;
    }
    Matrix<Rational> e = adapted_basis(s);
    Json j;
    j["basis"] = to_json(e);
    j["diagram"] = to_json(build_diagram(s, e));
    emit(j, "adapted-basis: ok");
    return exit_ok;
}

int cmd_sweep(int bounds, std::uint64_t seed) {
    if (bounds < 1 || bounds > max_sweep_n) {
        emit(Json{{"error", "sweep bound outside the documented scale [1, " +
                                std::to_string(max_sweep_n) +
                                "]; larger bounds are prohibitively slow"}},
             "sweep: bound out of range");
        return exit_bad_input;
    }
    int cases = 0, failures = 0;
    Json first_failure;
    for_each_small_setup(bounds, [&](const Diagram& d, const std::set<int>& J) {
        FiltrationSetup<Rational> s =
            setup_from_diagram<Rational>(d, J, FieldSpec::rationals());
        MainLemmaReport r = verify_mainlemma(s);
        ++cases;
        if (!r.pass && failures++ == 0) {
            first_failure = to_json(r);
            first_failure["diagram"] = to_json(d);
            first_failure["J"] = std::vector<int>(J.begin(), J.end());
        }
    });
    int eq6_cases = 0, eq6_failures = 0;
    for (const GenFormCase& c : genform_suite(seed)) {
        GenFormReport r = verify_genform(c.module, c.vertex, c.u);
        ++eq6_cases;
        if (!(r.precondition_ok && r.pass)) {
            if (failures + eq6_failures == 0)
                first_failure = Json{{"case", c.label}, {"report", to_json(r)}};
            ++eq6_failures;
        }
    }
    Json j;
    j["mainlemma_cases"] = cases;
    j["mainlemma_failures"] = failures;
    j["genform_cases"] = eq6_cases;
    j["genform_failures"] = eq6_failures;
    j["pass"] = failures + eq6_failures == 0;
    if (failures + eq6_failures > 0) j["first_failure"] = first_failure;
    emit(j, "sweep: " + std::to_string(cases + eq6_cases) + " cases, " +
                std::to_string(failures + eq6_failures) + " failures");
    return failures + eq6_failures == 0 ? exit_ok : exit_mismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"preprojective-algebra identity verifier"};
    app.require_subcommand(1);

    std::string setup_path, quiver_path, module_path, word_text, fword_text;
    std::string primes_text = "auto", j_text, format = "json";
    int vertex = 0, bounds = 4;
    std::uint64_t seed = 20260823;

    CLI::App* eq4 = app.add_subcommand("eq4", "main lemma: integral f = integral g = recipe");
    eq4->add_option("--setup", setup_path)->required();
    eq4->add_option("--J", j_text);
    eq4->add_option("--primes", primes_text);

    CLI::App* eq6 = app.add_subcommand("eq6", "reflection identity for delta functions");
    eq6->add_option("--quiver", quiver_path)->required();
    eq6->add_option("--module", module_path)->required();
    eq6->add_option("--vertex", vertex)->required();
    eq6->add_option("--fword", fword_text)->required();
    eq6->add_option("--primes", primes_text);

    CLI::App* delta = app.add_subcommand("delta", "evaluate delta_M on a word or f-word");
    delta->add_option("--quiver", quiver_path)->required();
    delta->add_option("--module", module_path)->required();
    delta->add_option("--word", word_text);
    delta->add_option("--fword", fword_text);
    delta->add_option("--primes", primes_text);

    CLI::App* diagram = app.add_subcommand("diagram", "box diagram of a filtration setup");
    diagram->add_option("--setup", setup_path)->required();
    diagram->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

    CLI::App* basis = app.add_subcommand("adapted-basis", "adapted basis of a setup");
    basis->add_option("--setup", setup_path)->required();

    CLI::App* sweep = app.add_subcommand("sweep", "exhaustive small-case verification");
    sweep->add_option("--bounds", bounds);
    sweep->add_option("--seed", seed);

    CLI11_PARSE(app, argc, argv);

    try {
        if (eq4->parsed()) return cmd_eq4(setup_path, j_text, primes_text);
        if (eq6->parsed()) return cmd_eq6(quiver_path, module_path, vertex, fword_text,
                                          primes_text);
        if (delta->parsed())
            return cmd_delta(quiver_path, module_path, word_text, fword_text, primes_text);
        if (diagram->parsed()) return cmd_diagram(setup_path, format);
        if (basis->parsed()) return cmd_adapted_basis(setup_path);
        if (sweep->parsed()) return cmd_sweep(bounds, seed);
    } catch (const std::runtime_error& e) {
        if (std::string(e.what()).find("non-polynomial") != std::string::npos) {
            emit(Json{{"error", e.what()}}, std::string("error: ") + e.what());
            return exit_interpolation;
        }
        emit(Json{{"error", e.what()}}, std::string("error: ") + e.what());
        return exit_bad_input;
    } catch (const std::exception& e) {
        emit(Json{{"error", e.what()}}, std::string("error: ") + e.what());
        return exit_bad_input;
    }
    return exit_bad_input;
}
