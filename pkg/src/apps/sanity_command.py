def register(subparsers, parents):
    parser = subparsers.add_parser("sanity", parents=parents,
                                   help="E3 nullity, the Zinbiel and tortkara identities and the bundled TT")
    parser.set_defaults(command="sanity", handler=handle)


def handle(args) -> dict:
    return {}
