//! A tour of the rule-language front end: lexing against the closed
//! vocabulary, parsing, validation, and canonical rendering — including
//! what rejection looks like at each stage.

use curb::lang::{parse, render, tokenize, validate, RuleSource, Vocabulary};
use curb::metamodel::StateDomain;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let vocabulary = Vocabulary::standard();
    println!("words:     {}", vocabulary.words().join(" "));
    println!("operators: {}", vocabulary.operators().join(" "));
    println!("plus two open families: integer literals and identifier<digits>\n");

    let source = RuleSource::from(
        "let identifier0 = milieuSum + 1 ;\nif identifier0 > 2 { emit 1 ; }\nemit 0 ;",
    );
    println!("source:\n{source}\n");

    let tokens = tokenize(&source)?;
    println!("{} tokens:", tokens.len());
    for token in tokens.iter().take(8) {
        println!("  {:?} `{}` at {}", token.class, token.text, token.position);
    }
    println!("  ...\n");

    let ast = parse(&tokens)?;
    println!("parsed {} top-level statements", ast.statements.len());

    let domain = StateDomain::integer_range(0, 1)?;
    let program = validate(ast, &domain, 4)?;
    println!(
        "validated for domain {domain}, milieu of {}: {} nodes\n",
        program.milieu_count(),
        program.node_count()
    );

    println!("canonical rendering:\n{}\n", render(program.ast()));

    println!("rejections:");
    for bad in [
        "emit launchMissiles ;",
        "let myVar = 1 ; emit myVar ;",
        "emit milieu [ 9 ] ;",
        "let identifier0 = 1 ;",
        "emit milieuSum == 2 ;",
    ] {
        let outcome = tokenize(&RuleSource::from(bad))
            .and_then(|tokens| parse(&tokens))
            .and_then(|ast| Ok(validate(ast, &domain, 4)?))
            .err()
            .map(|e| e.to_string())
            .unwrap_or_else(|| "accepted".to_owned());
        println!("  `{bad}`\n    -> {outcome}");
    }
    Ok(())
}
