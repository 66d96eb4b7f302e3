#include "tci/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tci/error.hpp"
#include "tci/numeric.hpp"

namespace tci {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Transportation simplex on an m x k problem with strictly positive supplies
// and demands. The basis is a spanning tree of the bipartite row/column graph
// with m + k - 1 cells (degenerate zero cells included).
class TransportationSimplex {
public:
    TransportationSimplex(std::vector<double> supply, std::vector<double> demand, Matrix cost)
        : m_(supply.size()), k_(demand.size()), supply_(std::move(supply)), demand_(std::move(demand)),
          cost_(std::move(cost)), x_(m_, k_), basic_(m_ * k_, 0), u_(m_), v_(k_) {
        double scale = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < k_; ++j) scale = std::max(scale, std::abs(cost_(i, j)));
        }
        tol_ = 1e-12 * scale;
    }

    void solve() {
        northwest_corner();
        const std::size_t max_pivots = 50 * (m_ + k_) * (m_ + k_) + 1000;
        std::size_t degenerate_run = 0;
        for (;;) {
            compute_potentials();
            const bool bland = degenerate_run > m_ + k_;
            const std::size_t entering = choose_entering(bland);
            if (entering == kNone) break;
            if (pivots_ == max_pivots) {
                throw DomainError("transport simplex did not converge within the pivot limit");
            }
            const bool degenerate = pivot(entering / k_, entering % k_);
            degenerate_run = degenerate ? degenerate_run + 1 : 0;
            ++pivots_;
        }
        dual_infeasibility_ = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < k_; ++j) {
                dual_infeasibility_ = std::max(dual_infeasibility_, u_[i] + v_[j] - cost_(i, j));
            }
        }
    }

    [[nodiscard]] const Matrix& flows() const { return x_; }
    [[nodiscard]] const std::vector<double>& row_duals() const { return u_; }
    [[nodiscard]] const std::vector<double>& col_duals() const { return v_; }
    [[nodiscard]] double dual_infeasibility() const { return dual_infeasibility_; }
    [[nodiscard]] std::size_t pivots() const { return pivots_; }

private:
    void northwest_corner() {
        std::vector<double> a = supply_;
        std::vector<double> b = demand_;
        std::size_t i = 0;
        std::size_t j = 0;
        for (;;) {
            // The last row and column absorb whatever rounding left behind.
            double q;
            if (i == m_ - 1) {
                q = std::max(b[j], 0.0);
            } else if (j == k_ - 1) {
                q = std::max(a[i], 0.0);
            } else {
                q = std::max(std::min(a[i], b[j]), 0.0);
            }
            x_(i, j) = q;
            basic_[i * k_ + j] = 1;
            a[i] -= q;
            b[j] -= q;
            if (i == m_ - 1 && j == k_ - 1) break;
            if (i == m_ - 1) {
                ++j;
            } else if (j == k_ - 1 || a[i] <= b[j]) {
                ++i;
            } else {
                ++j;
            }
        }
    }

    void build_adjacency() {
        row_adj_.assign(m_, {});
        col_adj_.assign(k_, {});
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < k_; ++j) {
                if (basic_[i * k_ + j]) {
                    row_adj_[i].push_back(j);
                    col_adj_[j].push_back(i);
                }
            }
        }
    }

    // Nodes 0..m-1 are rows, m..m+k-1 columns.
    void compute_potentials() {
        build_adjacency();
        std::vector<char> seen(m_ + k_, 0);
        std::vector<std::size_t> stack{0};
        u_[0] = 0.0;
        seen[0] = 1;
        while (!stack.empty()) {
            const std::size_t node = stack.back();
            stack.pop_back();
            if (node < m_) {
                for (std::size_t j : row_adj_[node]) {
                    if (seen[m_ + j]) continue;
                    v_[j] = cost_(node, j) - u_[node];
                    seen[m_ + j] = 1;
                    stack.push_back(m_ + j);
                }
            } else {
                const std::size_t j = node - m_;
                for (std::size_t i : col_adj_[j]) {
                    if (seen[i]) continue;
                    u_[i] = cost_(i, j) - v_[j];
                    seen[i] = 1;
                    stack.push_back(i);
                }
            }
        }
        if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
            throw InvariantViolation("transport simplex basis is not a spanning tree");
        }
    }

    // Most negative reduced cost, or the first negative one under Bland's
    // rule once degenerate pivots start to pile up.
    std::size_t choose_entering(bool bland) const {
        std::size_t best = kNone;
        double best_r = -tol_;
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < k_; ++j) {
                if (basic_[i * k_ + j]) continue;
                const double r = cost_(i, j) - u_[i] - v_[j];
                if (r < best_r) {
                    best = i * k_ + j;
                    if (bland) return best;
                    best_r = r;
                }
            }
        }
        return best;
    }

    // Returns true when the pivot moved no mass.
    bool pivot(std::size_t ie, std::size_t je) {
        // Tree path from column je back to row ie.
        std::vector<std::size_t> parent(m_ + k_, kNone);
        std::vector<std::size_t> stack{ie};
        parent[ie] = ie;
        while (!stack.empty()) {
            const std::size_t node = stack.back();
            stack.pop_back();
            if (node < m_) {
                for (std::size_t j : row_adj_[node]) {
                    if (parent[m_ + j] != kNone) continue;
                    parent[m_ + j] = node;
                    stack.push_back(m_ + j);
                }
            } else {
                for (std::size_t i : col_adj_[node - m_]) {
                    if (parent[i] != kNone) continue;
                    parent[i] = node;
                    stack.push_back(i);
                }
            }
        }
        std::vector<std::size_t> cycle{ie * k_ + je};
        std::size_t node = m_ + je;
        while (node != ie) {
            const std::size_t up = parent[node];
            const std::size_t row = node < m_ ? node : up;
            const std::size_t col = node < m_ ? up - m_ : node - m_;
            cycle.push_back(row * k_ + col);
            node = up;
        }
        // Cells alternate +, -, +, ... starting with the entering cell.
        double theta = kInf;
        std::size_t leaving = kNone;
        for (std::size_t pos = 1; pos < cycle.size(); pos += 2) {
            const std::size_t cell = cycle[pos];
            const double flow = x_(cell / k_, cell % k_);
            if (flow < theta || (flow == theta && cell < leaving)) {
                theta = flow;
                leaving = cell;
            }
        }
        for (std::size_t pos = 0; pos < cycle.size(); ++pos) {
            const std::size_t cell = cycle[pos];
            double& flow = x_(cell / k_, cell % k_);
            flow += pos % 2 == 0 ? theta : -theta;
            if (flow < 0.0) flow = 0.0;
        }
        x_(leaving / k_, leaving % k_) = 0.0;
        basic_[leaving] = 0;
        basic_[ie * k_ + je] = 1;
        return theta == 0.0;
    }

    std::size_t m_;
    std::size_t k_;
    std::vector<double> supply_;
    std::vector<double> demand_;
    Matrix cost_;
    Matrix x_;
    std::vector<char> basic_;
    std::vector<double> u_;
    std::vector<double> v_;
    std::vector<std::vector<std::size_t>> row_adj_;
    std::vector<std::vector<std::size_t>> col_adj_;
    double tol_ = 0.0;
    double dual_infeasibility_ = 0.0;
    std::size_t pivots_ = 0;
};

}  // namespace

CostSpec CostSpec::metric() { return CostSpec(Metric{}); }

CostSpec CostSpec::power(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw InvariantViolation("power cost: exponent must be finite and >= 1");
    return CostSpec(PowerOfMetric{p});
}

CostSpec CostSpec::gauge(ConvexGauge q) {
    if (q.domain_end() <= 0.0) throw InvariantViolation("cost gauge must be finite near 0");
    return CostSpec(GaugeOfMetric{std::move(q)});
}

double CostSpec::apply(double d) const {
    return std::visit(Overloaded{
                          [d](const Metric&) { return d; },
                          [d](const PowerOfMetric& p) { return p.p == 1.0 ? d : std::pow(d, p.p); },
                          [d](const GaugeOfMetric& g) { return g.q(d); },
                      },
                      v_);
}

ConvexGauge CostSpec::as_gauge() const {
    return std::visit(Overloaded{
                          [](const Metric&) { return ConvexGauge::power(1.0); },
                          [](const PowerOfMetric& p) { return ConvexGauge::power(p.p); },
                          [](const GaugeOfMetric& g) { return g.q; },
                      },
                      v_);
}

std::optional<double> CostSpec::power_exponent() const {
    if (std::holds_alternative<Metric>(v_)) return 1.0;
    if (const auto* p = std::get_if<PowerOfMetric>(&v_)) return p->p;
    const auto& q = std::get<GaugeOfMetric>(v_).q;
    if (const auto* pw = std::get_if<ConvexGauge::Power>(&q.family())) {
        if (pw->scale == 1.0) return pw->exponent;
    }
    return std::nullopt;
}

std::string CostSpec::describe() const {
    return std::visit(Overloaded{
                          [](const Metric&) { return std::string("d"); },
                          [](const PowerOfMetric& p) {
                              std::ostringstream os;
                              os << "d^" << p.p;
                              return os.str();
                          },
                          [](const GaugeOfMetric& g) { return "q(d), q = " + g.q.describe(); },
                      },
                      v_);
}

Matrix cost_matrix(const FiniteMetricSpace& space, const CostSpec& spec) {
    const std::size_t n = space.size();
    Matrix c(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = i == j ? spec.apply(0.0) : spec.apply(space.distance(i, j));
            if (!std::isfinite(v)) {
                std::ostringstream os;
                os << "cost " << spec.describe() << " is infinite between points " << i << " and " << j
                   << "; the cost must be finite on the space";
                throw DomainError(os.str());
            }
            c(i, j) = v;
        }
    }
    return c;
}

TransportPlan ot_cost(const DiscreteMeasure& nu, const DiscreteMeasure& mu, const Matrix& cost) {
    const std::size_t n = nu.size();
    require_same_size(mu.size(), n, "optimal transport");
    if (cost.rows() != n || cost.cols() != n) throw PreconditionError("optimal transport: cost matrix has wrong shape");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!std::isfinite(cost(i, j)) || cost(i, j) < 0.0) {
                throw PreconditionError("optimal transport: cost entries must be finite and nonnegative");
            }
        }
    }

    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < n; ++i) {
        if (nu[i] > 0.0) rows.push_back(i);
        if (mu[i] > 0.0) cols.push_back(i);
    }
    std::vector<double> supply;
    std::vector<double> demand;
    for (std::size_t i : rows) supply.push_back(nu[i]);
    for (std::size_t j : cols) demand.push_back(mu[j]);
    Matrix reduced(rows.size(), cols.size());
    for (std::size_t a = 0; a < rows.size(); ++a) {
        for (std::size_t b = 0; b < cols.size(); ++b) reduced(a, b) = cost(rows[a], cols[b]);
    }

    TransportationSimplex simplex(std::move(supply), std::move(demand), std::move(reduced));
    simplex.solve();

    TransportPlan out;
    out.plan = Matrix(n, n);
    out.row_potential.assign(n, kInf);
    out.col_potential.assign(n, kInf);
    out.pivots = simplex.pivots();
    out.dual_infeasibility = simplex.dual_infeasibility();
    for (std::size_t a = 0; a < rows.size(); ++a) {
        out.row_potential[rows[a]] = simplex.row_duals()[a];
        for (std::size_t b = 0; b < cols.size(); ++b) out.plan(rows[a], cols[b]) = simplex.flows()(a, b);
    }
    for (std::size_t b = 0; b < cols.size(); ++b) out.col_potential[cols[b]] = simplex.col_duals()[b];
    // Pruned points: c-transforms keep every constraint feasible.
    for (std::size_t i = 0; i < n; ++i) {
        if (nu[i] > 0.0) continue;
        double best = kInf;
        for (std::size_t j : cols) best = std::min(best, cost(i, j) - out.col_potential[j]);
        out.row_potential[i] = best;
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (mu[j] > 0.0) continue;
        double best = kInf;
        for (std::size_t i = 0; i < n; ++i) best = std::min(best, cost(i, j) - out.row_potential[i]);
        out.col_potential[j] = best;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) total += out.plan(i, j) * cost(i, j);
    }
    out.cost = total;
    return out;
}

double lipschitz_violation(const RealFunction& phi, const FiniteMetricSpace& space) {
    require_same_size(phi.size(), space.size(), "Lipschitz check");
    double worst = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        for (std::size_t j = 0; j < phi.size(); ++j) {
            worst = std::max(worst, std::abs(phi[i] - phi[j]) - space.distance(i, j));
        }
    }
    return worst;
}

KantorovichDual kr_dual(const DiscreteMeasure& nu, const DiscreteMeasure& mu, const FiniteMetricSpace& space) {
    const std::size_t n = space.size();
    require_same_size(nu.size(), n, "Kantorovich dual");
    const TransportPlan plan = ot_cost(nu, mu, cost_matrix(space, CostSpec::metric()));

    // phi(x) = min_j d(x, j) - v_j over the support of mu, then the
    // inf-convolution with d, which leaves a 1-Lipschitz function unchanged
    // up to rounding.
    std::vector<double> phi(n, kInf);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t j = 0; j < n; ++j) {
            if (mu[j] > 0.0) phi[x] = std::min(phi[x], space.distance(x, j) - plan.col_potential[j]);
        }
    }
    std::vector<double> projected(n, kInf);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) projected[x] = std::min(projected[x], phi[y] + space.distance(x, y));
    }
    const double floor = *std::min_element(projected.begin(), projected.end());
    for (double& p : projected) p -= floor;

    KantorovichDual out;
    out.potential = RealFunction(std::move(projected));
    double value = 0.0;
    for (std::size_t i = 0; i < n; ++i) value += out.potential[i] * (nu[i] - mu[i]);
    out.value = value;
    out.primal = plan.cost;
    out.duality_gap = plan.cost - value;
    out.lipschitz_violation = lipschitz_violation(out.potential, space);
    return out;
}

RealFunction sandwich_weight(const FiniteMetricSpace& space, const ConvexGauge& q, std::size_t x0) {
    std::vector<double> chi(space.size());
    for (std::size_t x = 0; x < space.size(); ++x) chi[x] = 0.5 * q(2.0 * space.distance(x, x0));
    return RealFunction(std::move(chi));
}

SandwichBounds sandwich_bounds(const DiscreteMeasure& nu, const DiscreteMeasure& mu, const FiniteMetricSpace& space,
                               const ConvexGauge& q, std::size_t x0) {
    if (x0 >= space.size()) throw PreconditionError("sandwich bounds: base point out of range");
    const double td = ot_cost(nu, mu, cost_matrix(space, CostSpec::metric())).cost;
    const double tc = ot_cost(nu, mu, cost_matrix(space, CostSpec::gauge(q))).cost;
    return {q(td), tc, weighted_total_variation(nu, mu, sandwich_weight(space, q, x0))};
}

}  // namespace tci
