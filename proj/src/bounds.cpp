#include "ringelect/bounds.hpp"

#include "ringelect/codec.hpp"

#include <algorithm>
#include <sstream>

namespace ringelect {

namespace {

struct Inputs {
    Rational n;
    Name l;
    BigInt f_l;
    Rational lambda_l;
    DerivedParams p;
};

Inputs gather(const RingConfig& config)
{
    require_valid(config);
    Inputs in;
    in.n = Rational(static_cast<long long>(config.size()));
    in.l = config.min_name();
    in.f_l = eval_delay(config.policy, in.l, in.l);
    in.lambda_l = dyadic_length(in.l.value);
    in.p = derive_params(config);
    return in;
}

Inputs gather_id_only(const RingConfig& config, const char* what)
{
    if (!is_id_only(config.policy)) {
        throw UnsupportedPolicy(std::string(what) + " needs a delay policy that depends on the name only");
    }
    return gather(config);
}

// N u (f(l)+1) / m
Rational lifetime_passes(const Inputs& in)
{
    return in.n * Rational(in.p.u) * Rational(in.f_l + 1) / Rational(in.p.m);
}

}  // namespace

Rational eq1_bound(const RingConfig& config, Name origin)
{
    const Inputs in = gather_id_only(config, "eq1_bound");
    if (std::find(config.names.begin(), config.names.end(), origin) == config.names.end()) {
        std::ostringstream os;
        os << "eq1_bound: " << origin << " is not a name on this ring";
        throw std::invalid_argument(os.str());
    }
    return lifetime_passes(in) / Rational(eval_id_delay(config.policy, origin));
}

Rational eq2_bound(const RingConfig& config)
{
    const Inputs in = gather_id_only(config, "eq2_bound");
    Rational sum = 0;
    for (Name i : config.names) {
        sum += Rational(1) / Rational(eval_id_delay(config.policy, i));
    }
    return 2 * in.n + lifetime_passes(in) * sum;
}

Rational eq2_closed(const RingConfig& config)
{
    const Inputs in = gather_id_only(config, "eq2_closed");
    return 2 * in.n + 3 * in.n * Rational(in.p.u) / Rational(in.p.m);
}

Rational eq3_bits_bound(const RingConfig& config)
{
    const Inputs in = gather_id_only(config, "eq3_bits_bound");
    Rational sum = 0;
    for (Name i : config.names) {
        sum += Rational(dyadic_length(i.value)) / Rational(eval_id_delay(config.policy, i));
    }
    return 2 * in.n + lifetime_passes(in) * sum;
}

Rational eq4_bound(const RingConfig& config)
{
    const Inputs in = gather_id_only(config, "eq4_bound");
    Rational sum = 0;
    for (Name i : config.names) {
        if (i != in.l) {
            sum += Rational(1) / Rational(eval_id_delay(config.policy, i));
        }
    }
    return 3 * in.n + lifetime_passes(in) * sum;
}

Rational eq5_expected_bound(const RingConfig& config)
{
    const Inputs in = gather_id_only(config, "eq5_expected_bound");
    const Rational w(in.p.w), w_s(in.p.w_s), w_p(in.p.w_p);
    if (in.p.w_p == 0 && in.p.w_s == 0) {
        throw std::domain_error("eq5_expected_bound: walk time is zero");
    }
    const Rational available = w + w_s + w_p * Rational(in.f_l) * in.lambda_l;
    Rational sum = 0;
    for (Name i : config.names) {
        const Rational circle = w_s + w_p * Rational(eval_id_delay(config.policy, i)) * Rational(dyadic_length(i.value));
        sum += available / circle;
    }
    return 2 * in.n + in.n * sum;
}

SplitBound split_delay_bound(const RingConfig& config)
{
    const Inputs in = gather_id_only(config, "split_delay_bound");
    const Rational w_s(in.p.w_s), m(in.p.m);
    const Rational numerator = in.n * Rational(in.p.u_clock) * Rational(in.f_l + 1) + 2 * w_s;
    SplitBound b;
    b.total = 2 * in.n;
    for (Name i : config.names) {
        b.total += numerator / (m * Rational(eval_id_delay(config.policy, i)) + w_s);
    }
    b.closed = 7 * in.n + 3 * Rational(in.p.epsilon) * in.n / m;
    return b;
}

TimeBounds time_bounds(const RingConfig& config)
{
    const Inputs in = gather(config);
    const Rational w(in.p.w), w_s(in.p.w_s), w_p(in.p.w_p), f_l(in.f_l);
    TimeBounds t;
    t.time_abs = in.n * Rational(in.p.u) * (f_l + 2);
    t.time_walk = 2 * w + w_s + w_p * f_l * in.lambda_l;
    t.time_relative_circle = w_s + w_p * in.lambda_l;
    t.time_relative_total = 3 * w + w_p * (in.lambda_l - 1);
    return t;
}

BoundReport make_bound_report(const RingConfig& config)
{
    const Inputs in = gather(config);
    BoundReport r;
    r.n = config.size();
    r.l = in.l;
    r.policy = policy_kind_name(config.policy);
    r.params = in.p;
    r.time = time_bounds(config);
    if (is_id_only(config.policy)) {
        std::map<Name, Rational> per_origin;
        for (Name i : config.names) {
            per_origin.emplace(i, lifetime_passes(in) / Rational(eval_id_delay(config.policy, i)));
        }
        r.eq1_per_origin = std::move(per_origin);
        r.eq2_total = eq2_bound(config);
        r.eq2_closed = ringelect::eq2_closed(config);
        r.eq3_bits = eq3_bits_bound(config);
        r.eq4_total = eq4_bound(config);
        r.split = split_delay_bound(config);
        if (in.p.w_p != 0 || in.p.w_s != 0) {
            r.eq5_expected = eq5_expected_bound(config);
        }
    }
    return r;
}

}  // namespace ringelect
