"""Fixed node-type vocabulary and the node-type -> representative-token table.

Names follow common Java AST naming (JavaParser style). Operators get one
node type per operator so that path strings distinguish ``a > b`` from
``a < b``.
"""

from __future__ import annotations

from codeattn.syntax.lexer import Kind

BINARY_OPERATORS = {
    "||": "Or",
    "&&": "And",
    "|": "BinaryOr",
    "^": "Xor",
    "&": "BinaryAnd",
    "==": "Equals",
    "!=": "NotEquals",
    "<": "LessThan",
    ">": "GreaterThan",
    "<=": "LessEquals",
    ">=": "GreaterEquals",
    "<<": "LeftShift",
    ">>": "SignedRightShift",
    ">>>": "UnsignedRightShift",
    "+": "Plus",
    "-": "Minus",
    "*": "Multiply",
    "/": "Divide",
    "%": "Remainder",
}

BINARY_PRECEDENCE = {
    "||": 1,
    "&&": 2,
    "|": 3,
    "^": 4,
    "&": 5,
    "==": 6, "!=": 6,
    "<": 7, ">": 7, "<=": 7, ">=": 7, "instanceof": 7,
    "<<": 8, ">>": 8, ">>>": 8,
    "+": 9, "-": 9,
    "*": 10, "/": 10, "%": 10,
}

ASSIGN_OPERATORS = {
    "=": "AssignExpr",
    "+=": "PlusAssign",
    "-=": "MinusAssign",
    "*=": "MultiplyAssign",
    "/=": "DivideAssign",
    "%=": "RemainderAssign",
    "&=": "BinaryAndAssign",
    "|=": "BinaryOrAssign",
    "^=": "XorAssign",
    "<<=": "LeftShiftAssign",
    ">>=": "SignedRightShiftAssign",
    ">>>=": "UnsignedRightShiftAssign",
}

LITERAL_TYPES = {
    Kind.INT: "IntegerLiteral",
    Kind.LONG: "LongLiteral",
    Kind.FLOAT: "DoubleLiteral",
    Kind.CHAR: "CharLiteral",
    Kind.STRING: "StringLiteral",
}

# type name -> description of its representative token ("" = structural)
NODE_TYPES: dict[str, str] = {
    # declarations
    "CompilationUnit": "",
    "PackageDeclaration": "`package`",
    "ImportDeclaration": "`import`",
    "ClassOrInterfaceDeclaration": "`class` or `interface`",
    "EnumDeclaration": "`enum`",
    "EnumConstantDeclaration": "",
    "FieldDeclaration": "",
    "MethodDeclaration": "`void` when declared void, else none",
    "ConstructorDeclaration": "",
    "InitializerDeclaration": "`static` for static initializers, else none",
    "Parameter": "`...` for varargs, else none",
    "VariableDeclarator": "`=` when initialized, else none",
    "VariableDeclarationExpr": "",
    "ExtendsClause": "`extends`",
    "ImplementsClause": "`implements`",
    "ThrowsClause": "`throws`",
    "TypeParameter": "its name",
    "TypeBound": "`extends` or `super`",
    "MarkerAnnotationExpr": "",
    "SingleMemberAnnotationExpr": "",
    "NormalAnnotationExpr": "",
    "MemberValuePair": "`=`",
    "Modifier": "the modifier keyword",
    # types
    "PrimitiveType": "the primitive keyword",
    "VoidType": "`void` (only in `void.class`)",
    "ClassOrInterfaceType": "its simple name",
    "ArrayType": "",
    "WildcardType": "`?`",
    "UnionType": "",
    # statements
    "Block": "",
    "ExpressionStmt": "",
    "EmptyStmt": "",
    "LocalClassDeclarationStmt": "",
    "LabeledStmt": "",
    "IfStmt": "`if`",
    "ElseClause": "`else`",
    "WhileStmt": "`while`",
    "DoStmt": "`do`",
    "DoWhileClause": "`while` of a do-while loop",
    "ForStmt": "`for`",
    "ForEachStmt": "`for`",
    "SwitchStmt": "`switch`",
    "SwitchExpr": "`switch`",
    "SwitchEntry": "`case` or `default`",
    "TryStmt": "`try`",
    "CatchClause": "`catch`",
    "FinallyClause": "`finally`",
    "ReturnStmt": "`return`",
    "BreakStmt": "`break`",
    "ContinueStmt": "`continue`",
    "ThrowStmt": "`throw`",
    "YieldStmt": "`yield`",
    "SynchronizedStmt": "`synchronized`",
    "AssertStmt": "`assert`",
    "ExplicitConstructorInvocationStmt": "`this` or `super`",
    # expressions
    "NameExpr": "the identifier",
    "SimpleName": "the identifier",
    "Wildcard": "`*` (import on demand)",
    "FieldAccessExpr": "",
    "MethodCallExpr": "",
    "ObjectCreationExpr": "`new`",
    "ArrayCreationExpr": "`new`",
    "ArrayCreationLevel": "",
    "ArrayInitializerExpr": "",
    "ArrayAccessExpr": "",
    "CastExpr": "",
    "EnclosedExpr": "",
    "ConditionalExpr": "`?`",
    "InstanceOfExpr": "`instanceof`",
    "LambdaExpr": "`->`",
    "MethodReferenceExpr": "`::`",
    "ClassExpr": "`class`",
    "ThisExpr": "`this`",
    "SuperExpr": "`super`",
    "PreIncrement": "`++`",
    "PreDecrement": "`--`",
    "PostIncrement": "`++`",
    "PostDecrement": "`--`",
    "UnaryPlus": "`+`",
    "UnaryMinus": "`-`",
    "LogicalComplement": "`!`",
    "BitwiseComplement": "`~`",
    "IntegerLiteral": "the literal",
    "LongLiteral": "the literal",
    "DoubleLiteral": "the literal",
    "CharLiteral": "the literal",
    "StringLiteral": "the literal",
    "BooleanLiteral": "the literal",
    "NullLiteral": "the literal",
}
NODE_TYPES.update({name: f"`{op}`" for op, name in BINARY_OPERATORS.items()})
NODE_TYPES.update({name: f"`{op}`" for op, name in ASSIGN_OPERATORS.items()})

STRUCTURAL_TYPES = frozenset(k for k, v in NODE_TYPES.items() if not v)
