#include "acqgraph/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <sstream>
#include <vector>

#include "acqgraph/errors.hpp"

namespace acqgraph {

namespace {

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (const char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string xml_unescape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '&') {
            out.push_back(text[i]);
            continue;
        }
        const std::size_t end = text.find(';', i);
        if (end == std::string::npos) throw DataError("bad XML entity");
        const std::string entity = text.substr(i + 1, end - i - 1);
        if (entity == "amp") {
            out.push_back('&');
        } else if (entity == "lt") {
            out.push_back('<');
        } else if (entity == "gt") {
            out.push_back('>');
        } else if (entity == "quot") {
            out.push_back('"');
        } else if (entity == "apos") {
            out.push_back('\'');
        } else {
            throw DataError("unknown XML entity: &" + entity + ";");
        }
        i = end;
    }
    return out;
}

// Just enough XML reading for the documents to_graphml produces.
struct Tag {
    std::string name;
    std::map<std::string, std::string> attrs;
    bool closing = false;      // </name>
    bool self_closing = false; // <name ... />
    std::size_t end = 0;       // index past '>'
};

std::optional<Tag> next_tag(const std::string& xml, std::size_t from,
                            std::string* text_before = nullptr) {
    const std::size_t open = xml.find('<', from);
    if (open == std::string::npos) return std::nullopt;
    if (text_before) *text_before = xml.substr(from, open - from);
    std::size_t pos = open + 1;
    Tag tag;
    if (pos < xml.size() && xml[pos] == '?') {  // declaration
        tag.end = xml.find('>', pos);
        if (tag.end == std::string::npos) throw DataError("bad XML declaration");
        ++tag.end;
        tag.name = "?";
        return tag;
    }
    if (pos < xml.size() && xml[pos] == '/') {
        tag.closing = true;
        ++pos;
    }
    while (pos < xml.size() && (std::isalnum(static_cast<unsigned char>(xml[pos])) ||
                                xml[pos] == '_' || xml[pos] == '.')) {
        tag.name.push_back(xml[pos++]);
    }
    while (pos < xml.size() && xml[pos] != '>') {
        if (std::isspace(static_cast<unsigned char>(xml[pos]))) {
            ++pos;
            continue;
        }
        if (xml[pos] == '/') {
            tag.self_closing = true;
            ++pos;
            continue;
        }
        std::string name;
        while (pos < xml.size() && xml[pos] != '=' &&
               !std::isspace(static_cast<unsigned char>(xml[pos]))) {
            name.push_back(xml[pos++]);
        }
        while (pos < xml.size() && xml[pos] != '"') ++pos;
        if (pos >= xml.size()) throw DataError("bad XML attribute");
        const std::size_t value_end = xml.find('"', pos + 1);
        if (value_end == std::string::npos) throw DataError("bad XML attribute");
        tag.attrs[name] = xml_unescape(xml.substr(pos + 1, value_end - pos - 1));
        pos = value_end + 1;
    }
    if (pos >= xml.size()) throw DataError("unterminated XML tag");
    tag.end = pos + 1;
    return tag;
}

}  // namespace

std::string to_graphml(const AttributedGraph& g) {
    // collect attribute keys across all nodes
    std::vector<std::string> label_keys, number_keys;
    for (NodeId id = 0; id < g.node_count(); ++id) {
        for (const auto& [k, v] : g.attributes(id).labels) label_keys.push_back(k);
        for (const auto& [k, v] : g.attributes(id).numbers) number_keys.push_back(k);
    }
    auto dedupe = [](std::vector<std::string>& keys) {
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    };
    dedupe(label_keys);
    dedupe(number_keys);

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    for (const auto& key : label_keys) {
        out << "  <key id=\"s_" << xml_escape(key)
            << "\" for=\"node\" attr.name=\"" << xml_escape(key)
            << "\" attr.type=\"string\"/>\n";
    }
    for (const auto& key : number_keys) {
        out << "  <key id=\"l_" << xml_escape(key)
            << "\" for=\"node\" attr.name=\"" << xml_escape(key)
            << "\" attr.type=\"long\"/>\n";
    }
    out << "  <key id=\"e_weight\" for=\"edge\" attr.name=\"weight\" "
           "attr.type=\"long\"/>\n";
    out << "  <key id=\"g_loops\" for=\"graph\" attr.name=\"allow_self_loops\" "
           "attr.type=\"string\"/>\n";
    out << "  <graph id=\"G\" edgedefault=\""
        << (g.directed() ? "directed" : "undirected") << "\">\n";
    out << "    <data key=\"g_loops\">"
        << (g.allows_self_loops() ? "true" : "false") << "</data>\n";

    std::vector<NodeId> order(g.node_count());
    for (NodeId id = 0; id < g.node_count(); ++id) order[id] = id;
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        return g.key_of(a) < g.key_of(b);
    });
    for (const NodeId id : order) {
        const auto& attrs = g.attributes(id);
        out << "    <node id=\"" << xml_escape(g.key_of(id)) << "\"";
        if (attrs.labels.empty() && attrs.numbers.empty()) {
            out << "/>\n";
            continue;
        }
        out << ">\n";
        for (const auto& [k, v] : attrs.labels) {
            out << "      <data key=\"s_" << xml_escape(k) << "\">"
                << xml_escape(v) << "</data>\n";
        }
        for (const auto& [k, v] : attrs.numbers) {
            out << "      <data key=\"l_" << xml_escape(k) << "\">"
                << static_cast<long long>(v) << "</data>\n";
        }
        out << "    </node>\n";
    }

    struct KeyEdge {
        std::string source, target;
        Weight weight;
    };
    std::vector<KeyEdge> edges;
    edges.reserve(g.edge_count());
    for (const auto& e : g.edges()) {
        edges.push_back({g.key_of(e.source), g.key_of(e.target), e.weight});
    }
    std::sort(edges.begin(), edges.end(), [](const KeyEdge& a, const KeyEdge& b) {
        if (a.source != b.source) return a.source < b.source;
        return a.target < b.target;
    });
    for (const auto& e : edges) {
        out << "    <edge source=\"" << xml_escape(e.source) << "\" target=\""
            << xml_escape(e.target) << "\"><data key=\"e_weight\">" << e.weight
            << "</data></edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
    return std::move(out).str();
}

AttributedGraph from_graphml(const std::string& xml) {
    // pass 1: key declarations and graph header
    std::map<std::string, std::pair<std::string, bool>> keys;  // id -> (name, is_long)
    bool directed = true;
    bool allow_loops = false;
    std::size_t pos = 0;
    std::optional<std::size_t> graph_start;
    while (auto tag = next_tag(xml, pos)) {
        pos = tag->end;
        if (tag->name == "key" && !tag->closing) {
            keys[tag->attrs.at("id")] = {tag->attrs.at("attr.name"),
                                         tag->attrs.at("attr.type") == "long"};
        } else if (tag->name == "graph" && !tag->closing) {
            directed = tag->attrs.at("edgedefault") == "directed";
            graph_start = pos;
            break;
        }
    }
    if (!graph_start) throw DataError("GraphML: no <graph> element");

    // pass 2: nodes and edges; graph-level data may set the loop flag
    struct PendingEdge {
        std::string source, target;
        Weight weight = 1;
    };
    std::vector<std::pair<std::string, NodeAttributes>> nodes;
    std::vector<PendingEdge> edges;

    pos = *graph_start;
    std::string current_node;
    NodeAttributes current_attrs;
    PendingEdge current_edge;
    enum class In { Graph, Node, Edge } state = In::Graph;

    auto read_data = [&](const Tag& tag) {
        const std::string key_id = tag.attrs.at("key");
        std::string text;
        const std::size_t content_start = tag.end;
        const std::size_t close = xml.find("</data>", content_start);
        if (close == std::string::npos) throw DataError("GraphML: bad <data>");
        text = xml_unescape(xml.substr(content_start, close - content_start));
        pos = close + 7;
        return std::make_pair(key_id, text);
    };

    while (auto tag = next_tag(xml, pos)) {
        pos = tag->end;
        if (tag->name == "node" && !tag->closing) {
            current_node = tag->attrs.at("id");
            current_attrs = {};
            if (tag->self_closing) {
                nodes.emplace_back(current_node, current_attrs);
            } else {
                state = In::Node;
            }
        } else if (tag->name == "node" && tag->closing) {
            nodes.emplace_back(current_node, current_attrs);
            state = In::Graph;
        } else if (tag->name == "edge" && !tag->closing) {
            current_edge = {tag->attrs.at("source"), tag->attrs.at("target"), 1};
            if (tag->self_closing) {
                edges.push_back(current_edge);
            } else {
                state = In::Edge;
            }
        } else if (tag->name == "edge" && tag->closing) {
            edges.push_back(current_edge);
            state = In::Graph;
        } else if (tag->name == "data" && !tag->closing) {
            const auto [key_id, text] = read_data(*tag);
            if (state == In::Edge) {
                if (key_id == "e_weight") current_edge.weight = std::stoll(text);
            } else if (state == In::Node) {
                const auto it = keys.find(key_id);
                if (it == keys.end()) throw DataError("GraphML: unknown key " + key_id);
                if (it->second.second) {
                    current_attrs.numbers[it->second.first] =
                        static_cast<double>(std::stoll(text));
                } else {
                    current_attrs.labels[it->second.first] = text;
                }
            } else if (key_id == "g_loops") {
                allow_loops = text == "true";
            }
        } else if (tag->name == "graph" && tag->closing) {
            break;
        }
    }

    AttributedGraph g(directed, allow_loops);
    for (auto& [key, attrs] : nodes) g.add_node(key, std::move(attrs));
    for (const auto& e : edges) {
        g.add_edge(g.require(e.source), g.require(e.target), e.weight);
    }
    return g;
}

std::string to_dot(const AttributedGraph& g,
                   const std::map<std::string, int>* community) {
    static const char* kPalette[] = {
        "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
        "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
    };
    auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (const char c : s) {
            if (c == '"' || c == '\\') out.push_back('\\');
            out.push_back(c);
        }
        out.push_back('"');
        return out;
    };
    std::ostringstream out;
    out << (g.directed() ? "digraph G {\n" : "graph G {\n");
    std::vector<NodeId> order(g.node_count());
    for (NodeId id = 0; id < g.node_count(); ++id) order[id] = id;
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        return g.key_of(a) < g.key_of(b);
    });
    for (const NodeId id : order) {
        out << "  " << quote(g.key_of(id));
        if (community) {
            const auto it = community->find(g.key_of(id));
            if (it != community->end()) {
                out << " [style=filled, fillcolor=\""
                    << kPalette[static_cast<std::size_t>(it->second) % 12]
                    << "\", comm=" << it->second << "]";
            }
        }
        out << ";\n";
    }
    struct KeyEdge {
        std::string source, target;
        Weight weight;
    };
    std::vector<KeyEdge> edges;
    for (const auto& e : g.edges()) {
        edges.push_back({g.key_of(e.source), g.key_of(e.target), e.weight});
    }
    std::sort(edges.begin(), edges.end(), [](const KeyEdge& a, const KeyEdge& b) {
        if (a.source != b.source) return a.source < b.source;
        return a.target < b.target;
    });
    const char* arrow = g.directed() ? " -> " : " -- ";
    for (const auto& e : edges) {
        out << "  " << quote(e.source) << arrow << quote(e.target)
            << " [weight=" << e.weight << "];\n";
    }
    out << "}\n";
    return std::move(out).str();
}

}  // namespace acqgraph
