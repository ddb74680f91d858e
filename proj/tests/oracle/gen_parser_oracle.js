#!/usr/bin/env node
// Generates tests/fixtures/parser_oracle.json: operator sites, declaration
// facts and expression shapes for every corpus file, extracted with the
// chevrotain-based java-parser package (an independent reference parser).
// The C++ parser tests compare their own extraction against this frozen file.
//
// Usage: node gen_parser_oracle.js <corpus-dir> <out-json>
//   npm install java-parser   (any recent version)

'use strict';
const fs = require('fs');
const path = require('path');
const { parse } = require('java-parser');

// JLS binary operator precedence (higher binds tighter); all left-assoc.
const PREC = {
  '||': 1, '&&': 2, '|': 3, '^': 4, '&': 5,
  '==': 6, '!=': 6, '<': 7, '>': 7, '<=': 7, '>=': 7,
  '<<': 8, '>>': 8, '>>>': 8, '+': 9, '-': 9, '*': 10, '/': 10, '%': 10,
};

// Annotation arguments carry no mutation sites; literal tokens inside them
// are skipped to match the C++ parser's opaque annotation spans.
function walk(node, visit, inAnnotation) {
  if (!node || typeof node !== 'object' || !node.name || !node.children) return;
  const inside = inAnnotation || node.name === 'annotation';
  visit(node, inside);
  for (const key in node.children) {
    for (const child of node.children[key]) walk(child, visit, inside);
  }
}

function tokensOf(node, key) {
  return (node.children[key] || []).filter((t) => t.image !== undefined);
}

function nodesOf(node, key) {
  return (node.children[key] || []).filter((n) => n.name !== undefined);
}

// shiftOperator subrules hold the individual '<'/'>' tokens.
function shiftOps(node) {
  const out = [];
  for (const sub of nodesOf(node, 'shiftOperator')) {
    const toks = [];
    for (const key in sub.children) {
      for (const t of sub.children[key]) {
        if (t.image !== undefined) toks.push(t);
      }
    }
    toks.sort((a, b) => a.startOffset - b.startOffset);
    out.push({
      op: toks.map((t) => t.image).join(''),
      offset: toks[0].startOffset,
    });
  }
  return out;
}

function span(loc) {
  return '[' + loc.startOffset + ',' + (loc.endOffset + 1) + ')';
}

function foldShape(operands, ops) {
  let oi = 0;
  let ti = 0;
  function climb(minPrec) {
    let left = span(operands[oi].location);
    oi += 1;
    return extend(left, minPrec);
  }
  function extend(left, minPrec) {
    while (ti < ops.length && PREC[ops[ti].op] >= minPrec) {
      const op = ops[ti];
      ti += 1;
      const right = climb(PREC[op.op] + 1);
      left = '(' + op.op + ' ' + left + ' ' + right + ')';
    }
    return left;
  }
  return climb(1);
}

function extractFacts(source) {
  const cst = parse(source);
  const facts = {
    binary_ops: [], assign_ops: [], unary_prefix: [], unary_postfix: [],
    instanceof_ops: [], methods: [], news: [], returns: [],
    null_literals: [], string_literals: [], ternaries: 0, shapes: [],
  };

  walk(cst, (node, inAnnotation) => {
    if (inAnnotation) return;
    if (node.name === 'binaryExpression') {
      const ops = tokensOf(node, 'BinaryOperator')
        .map((t) => ({ op: t.image, offset: t.startOffset }))
        .concat(shiftOps(node));
      ops.sort((a, b) => a.offset - b.offset);
      for (const op of ops) facts.binary_ops.push([op.op, op.offset]);
      for (const t of tokensOf(node, 'AssignmentOperator')) {
        facts.assign_ops.push([t.image, t.startOffset]);
      }
      for (const t of tokensOf(node, 'Instanceof')) {
        facts.instanceof_ops.push(t.startOffset);
      }
      if (ops.length > 0) {
        const operands = nodesOf(node, 'unaryExpression');
        operands.sort((a, b) => a.location.startOffset - b.location.startOffset);
        if (operands.length === ops.length + 1) {
          facts.shapes.push(foldShape(operands, ops));
        } else {
          throw new Error('unexpected binaryExpression arity');
        }
      }
    }
    if (node.name === 'unaryExpression' ||
        node.name === 'unaryExpressionNotPlusMinus') {
      for (const t of tokensOf(node, 'UnaryPrefixOperator')) {
        facts.unary_prefix.push([t.image, t.startOffset]);
      }
      for (const t of tokensOf(node, 'UnarySuffixOperator')) {
        facts.unary_postfix.push([t.image, t.startOffset]);
      }
    }
    if (node.name === 'conditionalExpression' &&
        tokensOf(node, 'QuestionMark').length > 0) {
      facts.ternaries += 1;
    }
    if (node.name === 'methodDeclaration' ||
        node.name === 'interfaceMethodDeclaration') {
      const header = nodesOf(node, 'methodHeader')[0];
      const result = header ? nodesOf(header, 'result')[0] : null;
      let name = null;
      walk(node, (sub) => {
        if (!name && sub.name === 'methodDeclarator') {
          const id = tokensOf(sub, 'Identifier')[0];
          if (id) name = id.image;
        }
      }, false);
      if (name && result) {
        facts.methods.push([name, result.location.startLine]);
      }
    }
    for (const t of tokensOf(node, 'New')) facts.news.push(t.startOffset);
    for (const t of tokensOf(node, 'Return')) facts.returns.push(t.startOffset);
    for (const t of tokensOf(node, 'Null')) {
      facts.null_literals.push(t.startOffset);
    }
    for (const t of tokensOf(node, 'StringLiteral')) {
      facts.string_literals.push(t.startOffset);
    }
  });

  for (const key of ['binary_ops', 'assign_ops', 'unary_prefix',
                     'unary_postfix']) {
    facts[key].sort((a, b) => a[1] - b[1]);
  }
  for (const key of ['instanceof_ops', 'news', 'returns', 'null_literals',
                     'string_literals']) {
    facts[key].sort((a, b) => a - b);
  }
  facts.methods.sort((a, b) => a[1] - b[1]);
  facts.shapes.sort();
  return facts;
}

function main() {
  const corpusDir = process.argv[2];
  const outPath = process.argv[3];
  if (!corpusDir || !outPath) {
    console.error('usage: gen_parser_oracle.js <corpus-dir> <out-json>');
    process.exit(2);
  }
  const files = [];
  (function collect(dir) {
    for (const entry of fs.readdirSync(dir, { withFileTypes: true })) {
      const full = path.join(dir, entry.name);
      if (entry.isDirectory()) collect(full);
      else if (entry.name.endsWith('.java')) files.push(full);
    }
  })(corpusDir);
  files.sort();

  const oracle = {};
  for (const file of files) {
    const rel = path.relative(corpusDir, file).split(path.sep).join('/');
    const source = fs.readFileSync(file, 'utf8');
    oracle[rel] = extractFacts(source);
    console.error('extracted', rel);
  }
  fs.writeFileSync(outPath, JSON.stringify(oracle, null, 1) + '\n');
  console.error('wrote', outPath);
}

main();
