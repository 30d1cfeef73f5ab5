#include "netcover/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

namespace netcover {

Network::Network(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
    if (vertex_count_ <= 0) {
        throw ParseError(ParseError::Kind::MalformedLine,
                         "network needs at least one vertex");
    }
    std::set<std::pair<int, int>> seen;
    for (auto& e : edges_) {
        if (e.a > e.b) std::swap(e.a, e.b);
        if (e.a < 0 || e.b >= vertex_count_) {
            throw ParseError(ParseError::Kind::BadVertexId,
                             "edge endpoint out of range");
        }
        if (e.a == e.b) {
            throw ParseError(ParseError::Kind::SelfLoop,
                             "self-loop at vertex " +
                                 std::to_string(display_id(e.a)));
        }
        if (!(e.length > 0.0) || !std::isfinite(e.length)) {
            throw ParseError(ParseError::Kind::NonpositiveLength,
                             "edge length must be positive");
        }
        if (!seen.insert({e.a, e.b}).second) {
            throw ParseError(ParseError::Kind::DuplicateEdge,
                             "parallel edge (" + std::to_string(display_id(e.a)) +
                                 "," + std::to_string(display_id(e.b)) + ")");
        }
    }

    incident_.assign(static_cast<size_t>(vertex_count_), {});
    for (int e = 0; e < edge_count(); ++e) {
        incident_[static_cast<size_t>(edges_[static_cast<size_t>(e)].a)].push_back(e);
        incident_[static_cast<size_t>(edges_[static_cast<size_t>(e)].b)].push_back(e);
    }

    // Connectivity check (breadth-first from vertex 0).
    std::vector<char> reached(static_cast<size_t>(vertex_count_), 0);
    std::queue<int> frontier;
    frontier.push(0);
    reached[0] = 1;
    int count = 1;
    while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop();
        for (int e : incident_[static_cast<size_t>(v)]) {
            const Edge& ed = edges_[static_cast<size_t>(e)];
            int w = ed.a == v ? ed.b : ed.a;
            if (!reached[static_cast<size_t>(w)]) {
                reached[static_cast<size_t>(w)] = 1;
                ++count;
                frontier.push(w);
            }
        }
    }
    if (count != vertex_count_) {
        throw ParseError(ParseError::Kind::Disconnected,
                         "network is not connected");
    }
}

Network Network::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    auto next_data_line = [&](std::string& out) {
        while (std::getline(in, line)) {
            size_t pos = line.find_first_not_of(" \t\r");
            if (pos == std::string::npos) continue;
            if (line[pos] == '#') continue;
            out = line;
            return true;
        }
        return false;
    };

    std::string header;
    if (!next_data_line(header)) {
        throw ParseError(ParseError::Kind::MalformedLine, "empty instance");
    }
    std::istringstream hs(header);
    int n = 0, m = 0;
    if (!(hs >> n >> m) || n <= 0 || m < 0) {
        throw ParseError(ParseError::Kind::MalformedLine,
                         "expected header \"n m\"");
    }
    std::string trailing;
    if (hs >> trailing) {
        throw ParseError(ParseError::Kind::MalformedLine,
                         "trailing tokens after header");
    }

    std::vector<Edge> edges;
    edges.reserve(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        std::string row;
        if (!next_data_line(row)) {
            throw ParseError(ParseError::Kind::MalformedLine,
                             "expected " + std::to_string(m) + " edge lines");
        }
        std::istringstream rs(row);
        int u = 0, v = 0;
        double len = 0.0;
        if (!(rs >> u >> v >> len)) {
            throw ParseError(ParseError::Kind::MalformedLine,
                             "bad edge line: " + row);
        }
        if (rs >> trailing) {
            throw ParseError(ParseError::Kind::MalformedLine,
                             "trailing tokens on edge line: " + row);
        }
        if (u < 1 || u > n || v < 1 || v > n) {
            throw ParseError(ParseError::Kind::BadVertexId,
                             "vertex id out of range on line: " + row);
        }
        edges.push_back(Edge{u - 1, v - 1, len});
    }
    return Network(n, std::move(edges));
}

int Network::find_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    for (int e : incident_[static_cast<size_t>(u)]) {
        const Edge& ed = edges_[static_cast<size_t>(e)];
        if (ed.a == u && ed.b == v) return e;
    }
    return -1;
}

double Network::mean_edge_length() const {
    double total = 0.0;
    for (const Edge& e : edges_) total += e.length;
    return total / static_cast<double>(edge_count());
}

DistanceMatrix all_pairs_distances(const Network& net) {
    const int n = net.vertex_count();
    std::vector<double> values(static_cast<size_t>(n) * static_cast<size_t>(n),
                               std::numeric_limits<double>::infinity());
    using Item = std::pair<double, int>;
    for (int s = 0; s < n; ++s) {
        std::vector<double> dist(static_cast<size_t>(n),
                                 std::numeric_limits<double>::infinity());
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
        dist[static_cast<size_t>(s)] = 0.0;
        heap.push({0.0, s});
        while (!heap.empty()) {
            auto [d, v] = heap.top();
            heap.pop();
            if (d > dist[static_cast<size_t>(v)]) continue;
            for (int e : net.incident_edges(v)) {
                const Edge& ed = net.edge(e);
                int w = ed.a == v ? ed.b : ed.a;
                double nd = d + ed.length;
                if (nd < dist[static_cast<size_t>(w)]) {
                    dist[static_cast<size_t>(w)] = nd;
                    heap.push({nd, w});
                }
            }
        }
        for (int v = 0; v < n; ++v) {
            values[static_cast<size_t>(s) * static_cast<size_t>(n) +
                   static_cast<size_t>(v)] = dist[static_cast<size_t>(v)];
        }
    }
    return DistanceMatrix(n, std::move(values));
}

SplitResult split_edges(const Network& net, double max_length) {
    if (!(max_length > 0.0)) {
        throw std::invalid_argument("split length must be positive");
    }
    std::vector<Edge> edges;
    std::vector<SplitResult::Origin> origin;
    int next_vertex = net.vertex_count();
    for (int e = 0; e < net.edge_count(); ++e) {
        const Edge& ed = net.edge(e);
        if (ed.length <= max_length + kDistanceTol) {
            edges.push_back(ed);
            origin.push_back({e, 0.0, ed.length});
            continue;
        }
        int pieces = static_cast<int>(
            std::ceil(ed.length / max_length - kDistanceTol));
        double piece_len = ed.length / static_cast<double>(pieces);
        int prev = ed.a;
        double prev_coord = 0.0;
        for (int k = 0; k < pieces; ++k) {
            int next = k + 1 == pieces ? ed.b : next_vertex++;
            double next_coord = k + 1 == pieces
                                    ? ed.length
                                    : piece_len * static_cast<double>(k + 1);
            Edge piece{prev, next, piece_len};
            SplitResult::Origin og{e, prev_coord, next_coord};
            if (piece.a > piece.b) std::swap(og.from, og.to);
            edges.push_back(piece);
            origin.push_back(og);
            prev = next;
            prev_coord = next_coord;
        }
    }
    Network split_net(next_vertex, std::move(edges));
    return SplitResult{std::move(split_net), next_vertex, std::move(origin)};
}

double point_distance(const Network& net, const DistanceMatrix& dm, Point p,
                      Point q) {
    const Edge& pe = net.edge(p.edge);
    const Edge& qe = net.edge(q.edge);
    if (p.edge == q.edge) {
        double inside = std::abs(p.offset - q.offset);
        double via_a = p.offset + dm(pe.a, pe.b) + (pe.length - q.offset);
        double via_b = (pe.length - p.offset) + dm(pe.b, pe.a) + q.offset;
        return std::min({inside, via_a, via_b});
    }
    double best = std::numeric_limits<double>::infinity();
    const double p_off[2] = {p.offset, pe.length - p.offset};
    const int p_end[2] = {pe.a, pe.b};
    const double q_off[2] = {q.offset, qe.length - q.offset};
    const int q_end[2] = {qe.a, qe.b};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            best = std::min(best, p_off[i] + dm(p_end[i], q_end[j]) + q_off[j]);
        }
    }
    return best;
}

double routed_distance(const Network& net, const DistanceMatrix& dm, int v,
                       int edge, EndpointTag through, double offset) {
    const Edge& e = net.edge(edge);
    if (through == EndpointTag::A) {
        return dm(v, e.a) + offset;
    }
    return dm(v, e.b) + (e.length - offset);
}

}  // namespace netcover
