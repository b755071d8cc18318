def register(subparsers, parents):
    znf = subparsers.add_parser("znf", parents=parents, help="Zinbiel normal form of a binary monomial, e.g. (ab)(cd)")
    znf.add_argument("monomial")
    znf.set_defaults(command="znf", handler=handle)

    expand = subparsers.add_parser("expand", parents=parents,
                                   help="Zinbiel expansion of a ternary monomial, e.g. [[a,b,c],d,e]")
    expand.add_argument("monomial")
    expand.set_defaults(command="expand", handler=handle)


def handle(args) -> dict:
    return {"monomial": args.monomial}
