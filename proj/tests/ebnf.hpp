// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

// Minimal ISO-EBNF reader and backtracking recognizer for the grammar in
// docs/. Whitespace is skipped before every terminal.

#ifndef DULAC_TEST_EBNF_HPP
#define DULAC_TEST_EBNF_HPP

#include <cctype>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ebnf {

struct Node
{
    enum Kind { Alt, Seq, Opt, Rep, Term, Ref } kind = Seq;
    std::vector<Node> kids;
    std::string text;
};

class Grammar
{
public:
    explicit Grammar(const std::string &source)
    {
        src_ = strip_comments(source);
        pos_ = 0;
        while (true) {
            ws();
            if (pos_ >= src_.size()) {
                break;
            }
            std::string name = ident();
            lit('=');
            Node body = alt();
            lit(';');
            if (rules_.count(name) != 0) {
                throw std::runtime_error("duplicate rule " + name);
            }
            rules_[name] = body;
        }
    }

    const std::map<std::string, Node> &rules() const { return rules_; }

    // Rule names referenced but never defined.
    std::set<std::string> undefined() const
    {
        std::set<std::string> out;
        for (const auto &[name, body] : rules_) {
            collect_refs(body, out);
        }
        std::set<std::string> missing;
        for (const auto &r : out) {
            if (rules_.count(r) == 0) {
                missing.insert(r);
            }
        }
        return missing;
    }

    std::set<std::string> reachable(const std::vector<std::string> &starts) const
    {
        std::set<std::string> seen;
        std::vector<std::string> todo(starts);
        while (!todo.empty()) {
            std::string r = todo.back();
            todo.pop_back();
            if (!seen.insert(r).second || rules_.count(r) == 0) {
                continue;
            }
            std::set<std::string> refs;
            collect_refs(rules_.at(r), refs);
            todo.insert(todo.end(), refs.begin(), refs.end());
        }
        return seen;
    }

    bool accepts(const std::string &start, const std::string &text) const
    {
        memo_.clear();
        Node ref;
        ref.kind = Node::Ref;
        ref.text = start;
        for (std::size_t end : match(ref, text, 0)) {
            std::size_t e = end;
            while (e < text.size() && std::isspace(static_cast<unsigned char>(text[e])) != 0) {
                ++e;
            }
            if (e == text.size()) {
                return true;
            }
        }
        return false;
    }

private:
    static std::string strip_comments(const std::string &s)
    {
        std::string out;
        std::size_t i = 0;
        while (i < s.size()) {
            if (s.compare(i, 2, "(*") == 0) {
                std::size_t end = s.find("*)", i + 2);
                if (end == std::string::npos) {
                    throw std::runtime_error("unterminated comment");
                }
                i = end + 2;
                out += ' ';
            } else {
                out += s[i++];
            }
        }
        return out;
    }

    void ws()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])) != 0) {
            ++pos_;
        }
    }

    bool peek(char c)
    {
        ws();
        return pos_ < src_.size() && src_[pos_] == c;
    }

    void lit(char c)
    {
        if (!peek(c)) {
            throw std::runtime_error(std::string("grammar: expected '") + c + "' at " + std::to_string(pos_));
        }
        ++pos_;
    }

    std::string ident()
    {
        ws();
        std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) != 0 || src_[pos_] == '_')) {
            ++pos_;
        }
        if (start == pos_) {
            throw std::runtime_error("grammar: expected identifier at " + std::to_string(pos_));
        }
        return src_.substr(start, pos_ - start);
    }

    Node alt()
    {
        Node n;
        n.kind = Node::Alt;
        n.kids.push_back(seq());
        while (peek('|')) {
            ++pos_;
            n.kids.push_back(seq());
        }
        return n;
    }

    Node seq()
    {
        Node n;
        n.kind = Node::Seq;
        n.kids.push_back(item());
        while (peek(',')) {
            ++pos_;
            n.kids.push_back(item());
        }
        return n;
    }

    Node item()
    {
        Node n;
        if (peek('"')) {
            ++pos_;
            std::size_t end = src_.find('"', pos_);
            n.kind = Node::Term;
            n.text = src_.substr(pos_, end - pos_);
            pos_ = end + 1;
        } else if (peek('[') || peek('{') || peek('(')) {
            char open = src_[pos_++];
            n = alt();
            Node wrap;
            wrap.kind = open == '[' ? Node::Opt : open == '{' ? Node::Rep : Node::Seq;
            wrap.kids.push_back(n);
            lit(open == '[' ? ']' : open == '{' ? '}' : ')');
            return wrap;
        } else {
            n.kind = Node::Ref;
            n.text = ident();
        }
        return n;
    }

    static void collect_refs(const Node &n, std::set<std::string> &out)
    {
        if (n.kind == Node::Ref) {
            out.insert(n.text);
        }
        for (const auto &k : n.kids) {
            collect_refs(k, out);
        }
    }

    std::set<std::size_t> match(const Node &n, const std::string &s, std::size_t pos) const
    {
        switch (n.kind) {
        case Node::Term: {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])) != 0) {
                ++pos;
            }
            if (s.compare(pos, n.text.size(), n.text) == 0) {
                return {pos + n.text.size()};
            }
            return {};
        }
        case Node::Ref: {
            auto key = std::make_pair(n.text, pos);
            if (auto it = memo_.find(key); it != memo_.end()) {
                return it->second;
            }
            memo_[key] = {};
            auto out = match(rules_.at(n.text), s, pos);
            memo_[key] = out;
            return out;
        }
        case Node::Alt: {
            std::set<std::size_t> out;
            for (const auto &k : n.kids) {
                auto r = match(k, s, pos);
                out.insert(r.begin(), r.end());
            }
            return out;
        }
        case Node::Seq: {
            std::set<std::size_t> cur{pos};
            for (const auto &k : n.kids) {
                std::set<std::size_t> next;
                for (std::size_t p : cur) {
                    auto r = match(k, s, p);
                    next.insert(r.begin(), r.end());
                }
                cur = std::move(next);
                if (cur.empty()) {
                    break;
                }
            }
            return cur;
        }
        case Node::Opt: {
            auto out = match(n.kids[0], s, pos);
            out.insert(pos);
            return out;
        }
        case Node::Rep: {
            std::set<std::size_t> out{pos};
            std::set<std::size_t> frontier{pos};
            while (!frontier.empty()) {
                std::set<std::size_t> next;
                for (std::size_t p : frontier) {
                    for (std::size_t e : match(n.kids[0], s, p)) {
                        if (out.insert(e).second) {
                            next.insert(e);
                        }
                    }
                }
                frontier = std::move(next);
            }
            return out;
        }
        }
        return {};
    }

    std::string src_;
    std::size_t pos_ = 0;
    std::map<std::string, Node> rules_;
    mutable std::map<std::pair<std::string, std::size_t>, std::set<std::size_t>> memo_;
};

} // namespace ebnf

#endif
