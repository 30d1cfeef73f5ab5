#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace netcover {

// Absolute tolerance used for all length/distance comparisons.
inline constexpr double kDistanceTol = 1e-9;

// Endpoints are vertex indices with a < b (vertices are 0-based internally;
// instance files and printed names use 1-based ids).
struct Edge {
    int a = 0;
    int b = 0;
    double length = 0.0;
};

class ParseError : public std::runtime_error {
  public:
    enum class Kind {
        MalformedLine,
        BadVertexId,
        NonpositiveLength,
        SelfLoop,
        DuplicateEdge,
        Disconnected,
    };

    ParseError(Kind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    Kind kind() const { return kind_; }

  private:
    Kind kind_;
};

/// Undirected connected network with positive edge lengths.
/// Immutable after construction; safe to share between threads.
class Network {
  public:
    Network(int vertex_count, std::vector<Edge> edges);

    /// Parses the instance grammar: first line "n m", then m lines "u v len"
    /// with 1-based vertex ids. '#' starts a comment line.
    static Network parse(std::string_view text);

    int vertex_count() const { return vertex_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(int e) const { return edges_[static_cast<size_t>(e)]; }
    const std::vector<Edge>& edges() const { return edges_; }

    /// Edge indices incident to v, ascending.
    const std::vector<int>& incident_edges(int v) const {
        return incident_[static_cast<size_t>(v)];
    }

    /// Index of edge {u, v} in either order, or -1.
    int find_edge(int u, int v) const;

    double mean_edge_length() const;

    /// 1-based display id of a vertex.
    static int display_id(int v) { return v + 1; }

  private:
    int vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> incident_;
};

/// Symmetric vertex-to-vertex shortest path lengths.
class DistanceMatrix {
  public:
    DistanceMatrix() = default;
    DistanceMatrix(int n, std::vector<double> values)
        : n_(n), values_(std::move(values)) {}

    double operator()(int u, int v) const {
        return values_[static_cast<size_t>(u) * static_cast<size_t>(n_) +
                       static_cast<size_t>(v)];
    }
    int size() const { return n_; }

  private:
    int n_ = 0;
    std::vector<double> values_;
};

/// Runs Dijkstra from every vertex.
DistanceMatrix all_pairs_distances(const Network& net);

/// A point of the network continuum: offset is measured from endpoint a.
struct Point {
    int edge = 0;
    double offset = 0.0;
};

struct SplitResult {
    Network network;

    /// Node count of the split network (|V| plus one per extra piece).
    int node_count = 0;

    /// Original-edge coordinates of a split edge's a and b endpoints.
    /// `to < from` when the piece is oriented against the original edge.
    struct Origin {
        int original_edge = 0;
        double from = 0.0;
        double to = 0.0;
    };
    std::vector<Origin> edge_origin;
};

/// Replaces every edge longer than max_length by ceil(len/max_length) equal
/// pieces joined by fresh vertices. New vertex ids follow the original ids,
/// ordered by (original edge index, piece index).
SplitResult split_edges(const Network& net, double max_length);

/// Shortest-path distance between two points of the continuum.
double point_distance(const Network& net, const DistanceMatrix& dm, Point p,
                      Point q);

enum class EndpointTag { A, B };

inline char tag_letter(EndpointTag t) { return t == EndpointTag::A ? 'a' : 'b'; }

/// Distance from vertex v to the point at `offset` on `edge`, routed through
/// the given endpoint of that edge. Affine in the offset with slope +-1.
double routed_distance(const Network& net, const DistanceMatrix& dm, int v,
                       int edge, EndpointTag through, double offset);

}  // namespace netcover
